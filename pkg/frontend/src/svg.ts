/** Minimal SVG chart builder: linear scales, line/marker series, axes. */

export interface Scale {
  (x: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function ticks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo || 1;
  const step0 = span / Math.max(count - 1, 1);
  const mag = 10 ** Math.floor(Math.log10(step0));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9 * span; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

export interface LineSeries {
  kind: "line";
  label: string;
  color: string;
  points: Array<[number, number]>;
}

export interface MarkerSeries {
  kind: "markers";
  label: string;
  color: string;
  shape: "circle" | "triangle";
  points: Array<[number, number]>;
  /** Optional per-point attributes echoed verbatim onto each marker element. */
  data?: Array<Record<string, string>>;
}

export type Series = LineSeries | MarkerSeries;

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
  xDomain: [number, number];
  yDomain: [number, number];
  series: Series[];
}

const MARGIN = { left: 62, right: 16, top: 34, bottom: 48 };

function marker(shape: "circle" | "triangle", x: number, y: number, color: string,
                extra: Record<string, string> = {}): string {
  const attrs = Object.entries(extra)
    .map(([k, v]) => ` ${k}="${esc(v)}"`)
    .join("");
  if (shape === "circle") {
    return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="3" fill="none" stroke="${color}" stroke-width="1.2"${attrs}/>`;
  }
  const s = 5;
  const pts = `${x},${y - s} ${x - s},${y + s} ${x + s},${y + s}`;
  return `<polygon points="${pts}" fill="${color}"${attrs}/>`;
}

export function renderChart(spec: ChartSpec): string {
  const width = spec.width ?? 640;
  const height = spec.height ?? 440;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const sx = linearScale(spec.xDomain, [MARGIN.left, MARGIN.left + plotW]);
  const sy = linearScale(spec.yDomain, [MARGIN.top + plotH, MARGIN.top]);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="11">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text x="${width / 2}" y="18" text-anchor="middle" font-size="13">${esc(spec.title)}</text>`);

  for (const t of ticks(spec.xDomain[0], spec.xDomain[1])) {
    const x = sx(t);
    parts.push(`<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#ddd"/>`);
    parts.push(`<text x="${x}" y="${MARGIN.top + plotH + 16}" text-anchor="middle">${t}</text>`);
  }
  for (const t of ticks(spec.yDomain[0], spec.yDomain[1])) {
    const y = sy(t);
    parts.push(`<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${y + 3}" text-anchor="end">${t}</text>`);
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text transform="rotate(-90 16 ${MARGIN.top + plotH / 2})" x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle">${esc(spec.yLabel)}</text>`,
  );

  for (const series of spec.series) {
    if (series.kind === "line") {
      const pts = series.points
        .map(([x, y]) => `${sx(x).toFixed(2)},${sy(y).toFixed(2)}`)
        .join(" ");
      parts.push(
        `<polyline points="${pts}" fill="none" stroke="${series.color}" stroke-width="1.6" data-label="${esc(series.label)}"/>`,
      );
    } else {
      for (let i = 0; i < series.points.length; i++) {
        const [x, y] = series.points[i];
        parts.push(marker(series.shape, sx(x), sy(y), series.color, {
          "data-label": series.label,
          ...(series.data?.[i] ?? {}),
        }));
      }
    }
  }

  // Legend, top-left inside the plot area.
  let ly = MARGIN.top + 14;
  for (const series of spec.series) {
    const lx = MARGIN.left + 10;
    if (series.kind === "line") {
      parts.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${series.color}" stroke-width="1.6"/>`);
    } else {
      parts.push(marker(series.shape, lx + 11, ly - 4, series.color));
    }
    parts.push(`<text x="${lx + 28}" y="${ly}">${esc(series.label)}</text>`);
    ly += 16;
  }

  parts.push("</svg>");
  return parts.join("\n");
}
