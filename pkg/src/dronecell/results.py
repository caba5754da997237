"""Result rows and their CSV/JSON serialization.

The CSV schema is the stable exchange boundary consumed by the plotting
frontend: a fixed header, one row per (grid point, station, engine), and
numbers rendered with 10 significant digits so identical inputs produce
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

CSV_COLUMNS = (
    "axis_name",
    "axis_value",
    "station",
    "engine",
    "coverage",
    "err_est",
    "runs_or_tol",
    "status",
    "h_star",
    "tbs_floor",
    "constrained",
)


@dataclass(frozen=True)
class ResultRow:
    axis_name: str
    axis_value: float
    station: str          # "T" or "A"
    engine: str           # analytic | mc_powerlaw | mc_atg
    coverage: float
    err_est: float
    runs_or_tol: float
    status: str = "ok"
    h_star: float | None = None
    tbs_floor: float | None = None
    constrained: bool | None = None


@dataclass
class RunResult:
    meta: dict
    rows: list[ResultRow] = field(default_factory=list)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def rows_to_csv(rows: list[ResultRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        record = asdict(row)
        lines.append(",".join(_fmt(record[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def result_to_json(result: RunResult) -> str:
    payload = {"meta": result.meta, "rows": [asdict(r) for r in result.rows]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
