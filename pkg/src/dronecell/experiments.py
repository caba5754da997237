"""Parameter-sweep studies: coverage vs threshold/height, optimal ABS
height, and the constrained feasibility curve over the stadium offset.

The feasibility search exploits two structural facts proved by the
coverage analysis: TBS coverage is non-increasing in the ABS height and
exactly constant above the power-saturation height, so the largest
admissible height under a TBS floor is found by bisection; ABS coverage
is then maximized over the admissible range by a coarse scan plus
golden-section refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import DEFAULT_QUAD, QuadratureSettings, coverage_abs, coverage_tbs
from .config import ScenarioConfig
from .montecarlo import AerialModel, SimSettings, coverage_counts
from .results import ResultRow

ENGINES = ("analytic", "mc_powerlaw", "mc_atg")

AXIS_FIELDS = {
    "gamma_t": "gamma_t_db",
    "gamma_a": "gamma_a_db",
    "h": "h",
    "d": "d",
    "p_max": "p_max_dbm",
}

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: tuple[float, ...]
    engines: tuple[str, ...] = ("analytic",)
    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    sim: SimSettings = field(default_factory=SimSettings)
    quad: QuadratureSettings = DEFAULT_QUAD

    def __post_init__(self):
        if self.axis not in AXIS_FIELDS:
            raise ValueError(f"unknown sweep axis {self.axis!r}; choose from {sorted(AXIS_FIELDS)}")
        if len(self.grid) == 0:
            raise ValueError("sweep grid must be nonempty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        for engine in self.engines:
            if engine not in ENGINES:
                raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[ResultRow]


def _engine_sim(engine: str, sim: SimSettings) -> SimSettings:
    model = AerialModel.ATG if engine == "mc_atg" else AerialModel.POWER_LAW
    return sim.replace(aerial_model=model)


def _mc_rows_gamma_axis(spec: SweepSpec, engine: str) -> list[ResultRow]:
    """MC rows for a SINR-threshold sweep from a single simulation.

    Threshold sweeps reuse one set of SINR draws: counts per threshold are
    identical to separate same-seed runs, point by point.
    """
    sim = _engine_sim(engine, spec.sim)
    grid_lin = [10.0 ** (g / 10.0) for g in spec.grid]
    if spec.axis == "gamma_t":
        gammas_t, gammas_a = grid_lin, [spec.base.gamma_a] * len(grid_lin)
    else:
        gammas_t, gammas_a = [spec.base.gamma_t] * len(grid_lin), grid_lin
    counts_t, counts_a = coverage_counts(spec.base, sim, gammas_t, gammas_a)
    rows = []
    for i, value in enumerate(spec.grid):
        for station, count in (("T", counts_t[i]), ("A", counts_a[i])):
            p = count / sim.runs
            rows.append(
                ResultRow(
                    axis_name=spec.axis,
                    axis_value=value,
                    station=station,
                    engine=engine,
                    coverage=p,
                    err_est=math.sqrt(p * (1.0 - p) / sim.runs),
                    runs_or_tol=float(sim.runs),
                )
            )
    return rows


def _point_rows(engine: str, spec: SweepSpec, value: float) -> list[ResultRow]:
    rows = []
    try:
        cfg = spec.base.replace(**{AXIS_FIELDS[spec.axis]: value})
        if engine == "analytic":
            res_t = coverage_tbs(cfg, spec.quad)
            res_a = coverage_abs(cfg, spec.quad)
            payload = (("T", res_t.value, res_t.err_est), ("A", res_a.value, res_a.err_est))
            runs_or_tol = spec.quad.abs_tol
        else:
            sim = _engine_sim(engine, spec.sim)
            counts_t, counts_a = coverage_counts(cfg, sim, [cfg.gamma_t], [cfg.gamma_a])
            p_t, p_a = counts_t[0] / sim.runs, counts_a[0] / sim.runs
            payload = (
                ("T", p_t, math.sqrt(p_t * (1 - p_t) / sim.runs)),
                ("A", p_a, math.sqrt(p_a * (1 - p_a) / sim.runs)),
            )
            runs_or_tol = float(sim.runs)
        for station, cov, err in payload:
            rows.append(
                ResultRow(
                    axis_name=spec.axis,
                    axis_value=value,
                    station=station,
                    engine=engine,
                    coverage=cov,
                    err_est=err,
                    runs_or_tol=runs_or_tol,
                )
            )
    except Exception as exc:  # record, keep sweeping
        for station in ("T", "A"):
            rows.append(
                ResultRow(
                    axis_name=spec.axis,
                    axis_value=value,
                    station=station,
                    engine=engine,
                    coverage=float("nan"),
                    err_est=float("nan"),
                    runs_or_tol=0.0,
                    status=f"error: {exc}",
                )
            )
    return rows


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate both stations with every requested engine on the grid."""
    rows: list[ResultRow] = []
    for engine in spec.engines:
        if engine != "analytic" and spec.axis in ("gamma_t", "gamma_a"):
            rows.extend(_mc_rows_gamma_axis(spec, engine))
            continue
        for value in spec.grid:
            rows.extend(_point_rows(engine, spec, value))
    rows.sort(key=lambda r: (ENGINES.index(r.engine), r.axis_value, r.station))
    return SweepResult(spec=spec, rows=rows)


@dataclass(frozen=True)
class OptimalHeight:
    h_star: float
    coverage: float
    boundary: bool      # maximizer pinned at a search-range edge
    engine: str


def _abs_coverage_fn(cfg: ScenarioConfig, engine: str, quad: QuadratureSettings,
                     sim: SimSettings | None):
    if engine == "analytic":
        return lambda h: coverage_abs(cfg.replace(h=h), quad).value
    sim = _engine_sim(engine, sim or SimSettings())

    def mc_value(h: float) -> float:
        _, counts_a = coverage_counts(cfg.replace(h=h), sim, [cfg.gamma_t], [cfg.gamma_a])
        return counts_a[0] / sim.runs

    return mc_value


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimal_height(
    cfg: ScenarioConfig,
    h_range: tuple[float, float] = (1.0, 1000.0),
    engine: str = "analytic",
    quad: QuadratureSettings = DEFAULT_QUAD,
    sim: SimSettings | None = None,
    coarse_points: int = 25,
    tol_m: float = 1.0,
) -> OptimalHeight:
    """Height maximizing ABS coverage over h_range.

    A coarse scan brackets the maximum before golden-section refinement,
    guarding against the plateau-then-decay shape of the coverage curve.
    """
    lo, hi = h_range
    if not 0 <= lo < hi:
        raise ValueError(f"invalid height range {h_range}")
    f = _abs_coverage_fn(cfg, engine, quad, sim)
    grid = np.linspace(lo, hi, coarse_points)
    values = [f(h) for h in grid]
    best = int(np.argmax(values))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, coarse_points - 1)]
    h_star, cov = _golden_max(f, float(a), float(b), tol_m)
    if values[best] > cov:  # plateau edge case: keep the better coarse point
        h_star, cov = float(grid[best]), values[best]
    boundary = h_star <= lo + tol_m or h_star >= hi - tol_m
    return OptimalHeight(h_star=h_star, coverage=cov, boundary=boundary, engine=engine)


@dataclass(frozen=True)
class FeasibilityPoint:
    d: float
    tbs_floor: float
    h_star: float
    abs_coverage_at_h_star: float
    tbs_coverage_at_h_star: float
    constrained: bool   # the TBS floor, not the unconstrained optimum, bound h_star
    feasible: bool
    status: str = "ok"


def feasibility_curve(
    cfg_base: ScenarioConfig,
    d_grid,
    tbs_floor: float,
    h_range: tuple[float, float] = (1.0, 1000.0),
    quad: QuadratureSettings = DEFAULT_QUAD,
    bisect_tol_m: float = 0.5,
    opt_tol_m: float = 1.0,
) -> list[FeasibilityPoint]:
    """Max ABS coverage vs stadium offset d under a TBS coverage floor.

    Per offset: the largest height keeping TBS coverage at or above the
    floor is located by bisection (TBS coverage is non-increasing in h);
    ABS coverage is then maximized over heights up to that cap.
    """
    if not 0.0 <= tbs_floor < 1.0:
        raise ValueError(f"tbs_floor must be in [0, 1) (got {tbs_floor})")
    h_lo, h_hi = h_range
    points: list[FeasibilityPoint] = []
    for d_val in d_grid:
        cfg = cfg_base.replace(d=float(d_val))
        cov_t = lambda h: coverage_tbs(cfg.replace(h=h), quad).value  # noqa: E731

        if cov_t(h_hi) >= tbs_floor:
            h_max = h_hi            # floor met on the plateau: never binds
            floor_binds = False
        elif cov_t(h_lo) < tbs_floor:
            points.append(
                FeasibilityPoint(
                    d=float(d_val), tbs_floor=tbs_floor, h_star=float("nan"),
                    abs_coverage_at_h_star=float("nan"),
                    tbs_coverage_at_h_star=cov_t(h_lo), constrained=True,
                    feasible=False, status="infeasible: TBS floor unmet at minimum height",
                )
            )
            continue
        else:
            a, b = h_lo, h_hi       # cov_t(a) >= floor > cov_t(b)
            while b - a > bisect_tol_m:
                mid = 0.5 * (a + b)
                if cov_t(mid) >= tbs_floor:
                    a = mid
                else:
                    b = mid
            h_max = a
            floor_binds = True

        opt = optimal_height(cfg, (h_lo, h_max), "analytic", quad, tol_m=opt_tol_m)
        constrained = floor_binds and opt.h_star >= h_max - 2.0 * opt_tol_m
        points.append(
            FeasibilityPoint(
                d=float(d_val),
                tbs_floor=tbs_floor,
                h_star=opt.h_star,
                abs_coverage_at_h_star=opt.coverage,
                tbs_coverage_at_h_star=cov_t(opt.h_star),
                constrained=constrained,
                feasible=True,
            )
        )
    return points
