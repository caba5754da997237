"""Pydantic request/response models for the coverage service.

These mirror the library dataclasses; the CLI builds the same models and
either posts them to a running server or hands them to the in-process
handlers, so both paths produce identical results.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator, model_validator

from ..config import ConfigError, ScenarioConfig
from ..experiments import AXIS_FIELDS, ENGINES
from ..montecarlo import SimSettings


class ScenarioConfigModel(BaseModel):
    r1: float = 500.0
    r2: float = 100.0
    d: float = 200.0
    h: float = 200.0
    p_max_dbm: float = 20.0
    rho_b_dbm: float = -75.0
    rho_d_dbm: float = -50.0
    alpha_b: float = 4.0
    alpha_cd: float = 3.0
    alpha_dd: float = 2.5
    m_dd: float = 5
    m_cd: float = 3
    sigma2_dbm: float = -100.0
    gamma_t_db: float = 0.0
    gamma_a_db: float = 0.0

    @model_validator(mode="after")
    def _check_invariants(self):
        try:
            self.to_config()
        except ConfigError as exc:
            raise ValueError(str(exc)) from exc
        return self

    def to_config(self) -> ScenarioConfig:
        return ScenarioConfig(**self.model_dump())

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "ScenarioConfigModel":
        return cls(**{name: getattr(cfg, name) for name in cls.model_fields})


class SimSettingsModel(BaseModel):
    runs: int = Field(default=1_000_000, ge=1)
    seed: int = 0
    batch_size: int = Field(default=1 << 17, ge=1)
    workers: int = Field(default=1, ge=1)

    def to_settings(self) -> SimSettings:
        return SimSettings(
            runs=self.runs, seed=self.seed, batch_size=self.batch_size, workers=self.workers
        )


class QuadratureModel(BaseModel):
    abs_tol: float = Field(default=1e-8, gt=0)
    rel_tol: float = Field(default=1e-6, gt=0)
    max_subdivisions: int = Field(default=8, ge=1)


class GridModel(BaseModel):
    """Either an explicit grid or a uniform start/stop/points description."""

    values: list[float] | None = None
    start: float | None = None
    stop: float | None = None
    points: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check(self):
        explicit = self.values is not None
        uniform = None not in (self.start, self.stop, self.points)
        if explicit == uniform:
            raise ValueError("provide either 'values' or all of 'start'/'stop'/'points'")
        return self

    def resolve(self) -> list[float]:
        if self.values is not None:
            return list(self.values)
        if self.points == 1:
            return [self.start]
        step = (self.stop - self.start) / (self.points - 1)
        return [self.start + i * step for i in range(self.points)]


class EvalRequest(BaseModel):
    config: ScenarioConfigModel = ScenarioConfigModel()
    engines: list[str] = ["analytic"]
    sim: SimSettingsModel = SimSettingsModel()
    quad: QuadratureModel = QuadratureModel()

    @field_validator("engines")
    @classmethod
    def _engines_known(cls, v):
        for engine in v:
            if engine not in ENGINES:
                raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
        if not v:
            raise ValueError("at least one engine required")
        return v


class SweepRequest(EvalRequest):
    axis: str
    grid: GridModel

    @field_validator("axis")
    @classmethod
    def _axis_known(cls, v):
        if v not in AXIS_FIELDS:
            raise ValueError(f"unknown axis {v!r}; choose from {sorted(AXIS_FIELDS)}")
        return v


class OptHeightRequest(BaseModel):
    config: ScenarioConfigModel = ScenarioConfigModel()
    engine: str = "analytic"
    h_min: float = 1.0
    h_max: float = 1000.0
    sim: SimSettingsModel = SimSettingsModel()
    quad: QuadratureModel = QuadratureModel()

    @model_validator(mode="after")
    def _check_range(self):
        if not 0 <= self.h_min < self.h_max:
            raise ValueError(f"invalid height range [{self.h_min}, {self.h_max}]")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        return self


class FeasibilityRequest(BaseModel):
    config: ScenarioConfigModel = ScenarioConfigModel()
    d_grid: GridModel
    tbs_floor: float = Field(default=0.9, ge=0.0, lt=1.0)
    h_min: float = 1.0
    h_max: float = 1000.0
    quad: QuadratureModel = QuadratureModel()


class RowModel(BaseModel):
    axis_name: str
    axis_value: float
    station: str
    engine: str
    coverage: float     # NaN on failed points; see the status column
    err_est: float
    runs_or_tol: float
    status: str = "ok"
    h_star: float | None = None
    tbs_floor: float | None = None
    constrained: bool | None = None


class DiagnosticsModel(BaseModel):
    regime: str
    z_cap: float
    h_low: float


class MetaModel(BaseModel):
    command: str
    version: str
    seed: int
    config: dict


class ResultResponse(BaseModel):
    meta: MetaModel
    diagnostics: DiagnosticsModel
    rows: list[RowModel]


class HealthResponse(BaseModel):
    status: str
    version: str
