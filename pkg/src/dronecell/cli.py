"""Command-line client for the coverage service.

Every subcommand builds the same request models the HTTP API accepts and
either runs them in-process (default) or posts them to a running server
(--server URL). Results are written as CSV (canonical) or JSON.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, ScenarioConfig, load_config, parse_overrides
from .results import ResultRow, RunResult, result_to_json, rows_to_csv
from .service import handlers
from .service.schemas import (
    EvalRequest,
    FeasibilityRequest,
    GridModel,
    OptHeightRequest,
    QuadratureModel,
    ResultResponse,
    ScenarioConfigModel,
    SimSettingsModel,
    SweepRequest,
)

_WORKERS_ENV = "DRONECELL_WORKERS"


def _add_common(parser: argparse.ArgumentParser, with_engines: bool = True):
    parser.add_argument("--config", help="scenario config file (key = value lines)")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config parameter (repeatable)",
    )
    if with_engines:
        parser.add_argument(
            "--engines",
            default="analytic",
            help="comma-separated: analytic, mc_powerlaw, mc_atg",
        )
    parser.add_argument("--runs", type=int, default=1_000_000, help="Monte Carlo runs")
    parser.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    parser.add_argument("--workers", type=int, default=None,
                        help=f"simulation worker threads (default ${_WORKERS_ENV} or 1)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--server", help="base URL of a running dronecell service")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dronecell",
        description="Uplink coverage for a stadium drone cell: analytic and Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="coverage of both stations at one configuration")
    _add_common(p_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter axis")
    _add_common(p_sweep)
    p_sweep.add_argument("--axis", required=True,
                         choices=("gamma_t", "gamma_a", "h", "d", "p_max"))
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)

    p_opt = sub.add_parser("opt-height", help="ABS height maximizing ABS coverage")
    _add_common(p_opt, with_engines=False)
    p_opt.add_argument("--engine", default="analytic",
                       choices=("analytic", "mc_powerlaw", "mc_atg"))
    p_opt.add_argument("--h-from", dest="h_min", type=float, default=1.0)
    p_opt.add_argument("--h-to", dest="h_max", type=float, default=1000.0)

    p_feas = sub.add_parser("feasibility",
                            help="max ABS coverage vs stadium offset under a TBS floor")
    _add_common(p_feas, with_engines=False)
    p_feas.add_argument("--d-from", dest="d_start", type=float, required=True)
    p_feas.add_argument("--d-to", dest="d_stop", type=float, required=True)
    p_feas.add_argument("--points", type=int, required=True)
    p_feas.add_argument("--floor", type=float, required=True, help="TBS coverage floor")
    p_feas.add_argument("--h-from", dest="h_min", type=float, default=1.0)
    p_feas.add_argument("--h-to", dest="h_max", type=float, default=1000.0)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _resolve_config(args) -> ScenarioConfig:
    overrides = parse_overrides(args.overrides)
    if args.config:
        return load_config(args.config, overrides)
    return ScenarioConfig(**overrides)


def _sim_model(args) -> SimSettingsModel:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get(_WORKERS_ENV, "1"))
    return SimSettingsModel(runs=args.runs, seed=args.seed, workers=workers)


def _post(server: str, endpoint: str, request) -> ResultResponse:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}{endpoint}", json=request.model_dump(), timeout=None)
    if resp.status_code != 200:
        raise RuntimeError(f"server returned {resp.status_code}: {resp.text}")
    return ResultResponse.model_validate(resp.json())


def _dispatch(args, endpoint: str, request, handler) -> ResultResponse:
    if args.server:
        return _post(args.server, endpoint, request)
    return handler(request)


def _emit(args, response: ResultResponse):
    rows = [ResultRow(**row.model_dump()) for row in response.rows]
    if args.format == "csv":
        text = rows_to_csv(rows)
    else:
        text = result_to_json(RunResult(meta=response.meta.model_dump(), rows=rows))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_eval(args) -> int:
    cfg = _resolve_config(args)
    request = EvalRequest(
        config=ScenarioConfigModel.from_config(cfg),
        engines=[e.strip() for e in args.engines.split(",") if e.strip()],
        sim=_sim_model(args),
        quad=QuadratureModel(),
    )
    response = _dispatch(args, "/eval", request, handlers.handle_eval)
    diag = response.diagnostics
    print(f"regime: {diag.regime} (z_cap = {diag.z_cap:.6g} m, h_low = {diag.h_low:.6g} m)")
    print(f"seed: {response.meta.seed}   version: {response.meta.version}")
    for row in response.rows:
        station = "TBS" if row.station == "T" else "ABS"
        print(
            f"{station}  {row.engine:<12} coverage = {row.coverage:.6f} "
            f"(err_est = {row.err_est:.2e}, {row.status})"
        )
    if args.out:
        _emit(args, response)
    return 0


def _cmd_sweep(args) -> int:
    cfg = _resolve_config(args)
    request = SweepRequest(
        config=ScenarioConfigModel.from_config(cfg),
        engines=[e.strip() for e in args.engines.split(",") if e.strip()],
        sim=_sim_model(args),
        quad=QuadratureModel(),
        axis=args.axis,
        grid=GridModel(start=args.start, stop=args.stop, points=args.points),
    )
    _emit(args, _dispatch(args, "/sweep", request, handlers.handle_sweep))
    return 0


def _cmd_opt_height(args) -> int:
    cfg = _resolve_config(args)
    request = OptHeightRequest(
        config=ScenarioConfigModel.from_config(cfg),
        engine=args.engine,
        h_min=args.h_min,
        h_max=args.h_max,
        sim=_sim_model(args),
        quad=QuadratureModel(),
    )
    response = _dispatch(args, "/optimal-height", request, handlers.handle_opt_height)
    row = response.rows[0]
    print(f"h_star = {row.h_star:.6g} m, ABS coverage = {row.coverage:.6f} ({row.status})")
    if args.out:
        _emit(args, response)
    return 0


def _cmd_feasibility(args) -> int:
    cfg = _resolve_config(args)
    request = FeasibilityRequest(
        config=ScenarioConfigModel.from_config(cfg),
        d_grid=GridModel(start=args.d_start, stop=args.d_stop, points=args.points),
        tbs_floor=args.floor,
        h_min=args.h_min,
        h_max=args.h_max,
        quad=QuadratureModel(),
    )
    _emit(args, _dispatch(args, "/feasibility", request, handlers.handle_feasibility))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    commands = {
        "eval": _cmd_eval,
        "sweep": _cmd_sweep,
        "opt-height": _cmd_opt_height,
        "feasibility": _cmd_feasibility,
        "serve": _cmd_serve,
    }
    try:
        return commands[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # engine/server failures
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
