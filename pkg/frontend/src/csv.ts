import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** Columns the dronecell CLI always writes, in order. */
export const REQUIRED_COLUMNS = [
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
] as const;

export interface ResultRow {
  axis_name: string;
  axis_value: number;
  station: "T" | "A";
  engine: string;
  coverage: number;
  err_est: number;
  runs_or_tol: number;
  status: string;
  h_star: number | null;
  tbs_floor: number | null;
  constrained: boolean | null;
  /** Verbatim h_star cell, kept so markers can echo the declared value exactly. */
  h_star_raw: string;
}

export class CsvSchemaError extends Error {}

function numberOrNull(cell: string): number | null {
  return cell === "" ? null : Number(cell);
}

export function parseResultCsv(text: string, source: string): ResultRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvSchemaError(`${source}: malformed CSV (${first.message})`);
  }
  const header = parsed.meta.fields ?? [];
  for (const column of REQUIRED_COLUMNS) {
    if (!header.includes(column)) {
      throw new CsvSchemaError(`${source}: missing required column '${column}'`);
    }
  }
  if (parsed.data.length === 0) {
    throw new CsvSchemaError(`${source}: no data rows`);
  }
  return parsed.data.map((record) => ({
    axis_name: record.axis_name,
    axis_value: Number(record.axis_value),
    station: record.station as "T" | "A",
    engine: record.engine,
    coverage: Number(record.coverage),
    err_est: Number(record.err_est),
    runs_or_tol: Number(record.runs_or_tol),
    status: record.status,
    h_star: numberOrNull(record.h_star),
    tbs_floor: numberOrNull(record.tbs_floor),
    constrained: record.constrained === "" ? null : record.constrained === "true",
    h_star_raw: record.h_star,
  }));
}

export function loadResultCsv(path: string): ResultRow[] {
  return parseResultCsv(readFileSync(path, "utf8"), path);
}
