import { writeFileSync, readFileSync } from "node:fs";
import { resolve } from "node:path";
import { z } from "zod";

import { loadResultCsv, ResultRow } from "./csv.js";
import { ChartSpec, PALETTE, renderChart, Series } from "./svg.js";

const curveSchema = z.object({
  path: z.string(),
  label: z.string(),
  station: z.enum(["T", "A"]),
});

export const figureSpecSchema = z.object({
  figure: z.enum(["fig2", "fig3", "fig4", "fig5"]),
  output: z.string(),
  title: z.string().optional(),
  xLabel: z.string(),
  yLabel: z.string().default("Coverage probability"),
  curves: z.array(curveSchema).min(1),
  optima: z.array(z.object({ path: z.string(), label: z.string().optional() })).default([]),
});

export type FigureSpec = z.infer<typeof figureSpecSchema>;

export function loadFigureSpec(path: string): FigureSpec {
  return figureSpecSchema.parse(JSON.parse(readFileSync(path, "utf8")));
}

const okRows = (rows: ResultRow[]) => rows.filter((r) => r.status === "ok");

function sortedPoints(rows: ResultRow[]): Array<[number, number]> {
  return rows
    .slice()
    .sort((a, b) => a.axis_value - b.axis_value)
    .map((r) => [r.axis_value, r.coverage]);
}

/**
 * Build the chart series for one figure: analytic rows become lines,
 * Monte Carlo rows become circle markers (one color per declared curve),
 * and fig4 overlays triangle markers at the CSV-declared optimal heights.
 */
export function buildChart(spec: FigureSpec, baseDir: string): ChartSpec {
  const series: Series[] = [];
  let xMin = Infinity;
  let xMax = -Infinity;

  spec.curves.forEach((curve, index) => {
    const rows = okRows(loadResultCsv(resolve(baseDir, curve.path))).filter(
      (r) => r.station === curve.station,
    );
    const color = PALETTE[index % PALETTE.length];
    const analytic = rows.filter((r) => r.engine === "analytic");
    if (analytic.length > 0) {
      series.push({ kind: "line", label: curve.label, color, points: sortedPoints(analytic) });
    }
    for (const engine of ["mc_powerlaw", "mc_atg"] as const) {
      const mc = rows.filter((r) => r.engine === engine);
      if (mc.length > 0) {
        series.push({
          kind: "markers",
          label: `${curve.label} (${engine === "mc_atg" ? "ATG sim" : "simulation"})`,
          color,
          shape: "circle",
          points: sortedPoints(mc),
        });
      }
    }
    for (const r of rows) {
      xMin = Math.min(xMin, r.axis_value);
      xMax = Math.max(xMax, r.axis_value);
    }
  });

  if (spec.figure === "fig4") {
    for (const entry of spec.optima) {
      const rows = okRows(loadResultCsv(resolve(baseDir, entry.path))).filter(
        (r) => r.station === "A" && r.h_star !== null,
      );
      series.push({
        kind: "markers",
        label: entry.label ?? "optimal height",
        color: "#000000",
        shape: "triangle",
        points: rows.map((r) => [r.h_star as number, r.coverage]),
        data: rows.map((r) => ({ "data-h-star": r.h_star_raw })),
      });
    }
  }

  if (series.length === 0) {
    throw new Error(`${spec.figure}: no drawable series after filtering`);
  }
  return {
    title: spec.title ?? spec.figure,
    xLabel: spec.xLabel,
    yLabel: spec.yLabel,
    xDomain: [xMin, xMax],
    yDomain: [0, 1],
    series,
  };
}

/** Render a figure spec to its SVG file; returns the SVG text. */
export function render(spec: FigureSpec, baseDir = "."): string {
  const svg = renderChart(buildChart(spec, baseDir));
  writeFileSync(resolve(baseDir, spec.output), svg);
  return svg;
}
