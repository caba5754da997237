"""FastAPI application exposing the coverage engines.

Run with: uvicorn dronecell.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..config import ConfigError
from . import handlers
from .schemas import (
    EvalRequest,
    FeasibilityRequest,
    HealthResponse,
    OptHeightRequest,
    ResultResponse,
    SweepRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="dronecell",
        version=__version__,
        description="Uplink coverage probabilities for a stadium drone cell "
        "underlaying a terrestrial cell: analytic engine and Monte Carlo oracle.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/eval", response_model=ResultResponse)
    def eval_point(req: EvalRequest) -> ResultResponse:
        return _guard(handlers.handle_eval, req)

    @app.post("/sweep", response_model=ResultResponse)
    def sweep(req: SweepRequest) -> ResultResponse:
        return _guard(handlers.handle_sweep, req)

    @app.post("/optimal-height", response_model=ResultResponse)
    def opt_height(req: OptHeightRequest) -> ResultResponse:
        return _guard(handlers.handle_opt_height, req)

    @app.post("/feasibility", response_model=ResultResponse)
    def feasibility(req: FeasibilityRequest) -> ResultResponse:
        return _guard(handlers.handle_feasibility, req)

    return app


def _guard(handler, req):
    try:
        return handler(req)
    except (ConfigError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


app = create_app()
