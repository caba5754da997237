export { loadResultCsv, parseResultCsv, CsvSchemaError, REQUIRED_COLUMNS } from "./csv.js";
export type { ResultRow } from "./csv.js";
export { buildChart, render, loadFigureSpec, figureSpecSchema } from "./figures.js";
export type { FigureSpec } from "./figures.js";
export { linearScale, renderChart, ticks, PALETTE } from "./svg.js";
export type { ChartSpec, Series } from "./svg.js";
