"""Uplink coverage analysis for a stadium drone cell underlaying a
terrestrial cell: analytic Laplace-transform engine, Monte Carlo oracle,
parameter-sweep experiments, HTTP service, and CLI."""

__version__ = "0.1.0"

from .analytic import (
    CoverageResult,
    LaplaceEval,
    QuadratureSettings,
    coverage_abs,
    coverage_tbs,
    laplace_abs_derivative,
    laplace_abs_interference,
    laplace_tbs_interference,
)
from .config import (
    ConfigError,
    PowerControlBoundaries,
    PowerRegime,
    ScenarioConfig,
    boundaries,
    load_config,
)
from .experiments import (
    FeasibilityPoint,
    OptimalHeight,
    SweepResult,
    SweepSpec,
    feasibility_curve,
    optimal_height,
    run_sweep,
)
from .montecarlo import (
    AerialModel,
    SimEstimate,
    SimSettings,
    Station,
    simulate_coverage,
    simulate_interference_laplace,
)

__all__ = [
    "__version__",
    "AerialModel",
    "ConfigError",
    "CoverageResult",
    "FeasibilityPoint",
    "LaplaceEval",
    "OptimalHeight",
    "PowerControlBoundaries",
    "PowerRegime",
    "QuadratureSettings",
    "ScenarioConfig",
    "SimEstimate",
    "SimSettings",
    "Station",
    "SweepResult",
    "SweepSpec",
    "boundaries",
    "coverage_abs",
    "coverage_tbs",
    "feasibility_curve",
    "laplace_abs_derivative",
    "laplace_abs_interference",
    "laplace_tbs_interference",
    "load_config",
    "optimal_height",
    "run_sweep",
    "simulate_coverage",
    "simulate_interference_laplace",
]
