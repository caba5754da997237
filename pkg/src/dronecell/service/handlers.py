"""Request handlers shared by the HTTP service and the in-process CLI path."""

from __future__ import annotations

from dataclasses import asdict

from .. import __version__
from ..analytic import QuadratureSettings
from ..config import ScenarioConfig, boundaries
from ..experiments import (
    SweepSpec,
    feasibility_curve,
    optimal_height,
    run_sweep,
)
from ..results import ResultRow
from .schemas import (
    DiagnosticsModel,
    EvalRequest,
    FeasibilityRequest,
    MetaModel,
    OptHeightRequest,
    ResultResponse,
    RowModel,
    SweepRequest,
)


def _quad(req) -> QuadratureSettings:
    return QuadratureSettings(
        abs_tol=req.quad.abs_tol,
        rel_tol=req.quad.rel_tol,
        max_subdivisions=req.quad.max_subdivisions,
    )


def _meta(command: str, cfg: ScenarioConfig, seed: int) -> MetaModel:
    return MetaModel(command=command, version=__version__, seed=seed, config=asdict(cfg))


def _diagnostics(cfg: ScenarioConfig) -> DiagnosticsModel:
    b = boundaries(cfg)
    return DiagnosticsModel(regime=b.regime.value, z_cap=b.z_cap, h_low=b.h_low)


def _rows(rows: list[ResultRow]) -> list[RowModel]:
    return [RowModel(**asdict(r)) for r in rows]


def handle_eval(req: EvalRequest) -> ResultResponse:
    cfg = req.config.to_config()
    spec = SweepSpec(
        axis="h",
        grid=(cfg.h,),
        engines=tuple(req.engines),
        base=cfg,
        sim=req.sim.to_settings(),
        quad=_quad(req),
    )
    result = run_sweep(spec)
    return ResultResponse(
        meta=_meta("eval", cfg, req.sim.seed),
        diagnostics=_diagnostics(cfg),
        rows=_rows(result.rows),
    )


def handle_sweep(req: SweepRequest) -> ResultResponse:
    cfg = req.config.to_config()
    spec = SweepSpec(
        axis=req.axis,
        grid=tuple(req.grid.resolve()),
        engines=tuple(req.engines),
        base=cfg,
        sim=req.sim.to_settings(),
        quad=_quad(req),
    )
    result = run_sweep(spec)
    return ResultResponse(
        meta=_meta("sweep", cfg, req.sim.seed),
        diagnostics=_diagnostics(cfg),
        rows=_rows(result.rows),
    )


def handle_opt_height(req: OptHeightRequest) -> ResultResponse:
    cfg = req.config.to_config()
    opt = optimal_height(
        cfg,
        h_range=(req.h_min, req.h_max),
        engine=req.engine,
        quad=_quad(req),
        sim=req.sim.to_settings(),
    )
    row = RowModel(
        axis_name="h",
        axis_value=opt.h_star,
        station="A",
        engine=req.engine,
        coverage=opt.coverage,
        err_est=0.0,
        runs_or_tol=float(req.sim.runs) if req.engine != "analytic" else req.quad.abs_tol,
        status="boundary-maximum" if opt.boundary else "ok",
        h_star=opt.h_star,
    )
    return ResultResponse(
        meta=_meta("opt-height", cfg, req.sim.seed),
        diagnostics=_diagnostics(cfg),
        rows=[row],
    )


def handle_feasibility(req: FeasibilityRequest) -> ResultResponse:
    cfg = req.config.to_config()
    points = feasibility_curve(
        cfg,
        req.d_grid.resolve(),
        req.tbs_floor,
        h_range=(req.h_min, req.h_max),
        quad=_quad(req),
    )
    rows = []
    for pt in points:
        for station, cov in (("A", pt.abs_coverage_at_h_star), ("T", pt.tbs_coverage_at_h_star)):
            rows.append(
                RowModel(
                    axis_name="d",
                    axis_value=pt.d,
                    station=station,
                    engine="analytic",
                    coverage=cov,
                    err_est=0.0,
                    runs_or_tol=req.quad.abs_tol,
                    status=pt.status,
                    h_star=pt.h_star,
                    tbs_floor=pt.tbs_floor,
                    constrained=pt.constrained,
                )
            )
    return ResultResponse(
        meta=_meta("feasibility", cfg, 0),
        diagnostics=_diagnostics(cfg),
        rows=rows,
    )
