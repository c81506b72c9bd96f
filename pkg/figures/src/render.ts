import { scaleLinear } from "d3";
import type { AnalyticPoint, SweepRow } from "./csv.js";
import type { FigureSpec, OverlaySpec } from "./schema.js";
import { bandPath, esc, fmt, lighten, linePath, tag } from "./svg.js";

export interface OverlayData {
  spec: OverlaySpec;
  points: AnalyticPoint[];
}

export interface RenderResult {
  svg: string;
  points: number;
  rows: number;
  curves: number;
  overlays: number;
}

const PALETTE = [
  "#1f6fb2",
  "#d95f02",
  "#2a9d4e",
  "#8b3fa8",
  "#c23b4f",
  "#7a7a24",
  "#2a8f8f",
  "#8a4a22",
];

interface CurveGroup {
  property: string;
  n: number;
  rows: SweepRow[];
  color: string;
  label: string;
}

// One curve per (property, n) pair, in sorted order so reruns group
// identically. Colors come from the style map keyed by property; when a
// property appears at several sizes the later sizes get lighter shades.
function groupRows(rows: SweepRow[], spec: FigureSpec): CurveGroup[] {
  const properties = [...new Set(rows.map((r) => r.property))].sort();
  const groups: CurveGroup[] = [];
  for (const property of properties) {
    const mine = rows.filter((r) => r.property === property);
    const sizes = [...new Set(mine.map((r) => r.n))].sort((a, b) => a - b);
    const style = spec.styles[property] ?? {};
    const base = style.color ?? PALETTE[properties.indexOf(property) % PALETTE.length];
    const name = style.label ?? property;
    for (const n of sizes) {
      const rowsAtN = mine
        .filter((r) => r.n === n)
        .sort((a, b) => a.axis_value - b.axis_value);
      groups.push({
        property,
        n,
        rows: rowsAtN,
        color: sizes.length > 1 ? lighten(base, (0.5 * sizes.indexOf(n)) / (sizes.length - 1)) : base,
        label: sizes.length > 1 ? `${name} (n=${n})` : name,
      });
    }
  }
  return groups;
}

function overlayValues(overlay: OverlayData): Array<[number, number]> {
  const { spec, points } = overlay;
  if (spec.column === "value2" && points.some((p) => p.value2 === undefined)) {
    throw new Error(`overlay '${spec.curve}': ${spec.path} has no value2 column`);
  }
  return points
    .map((p): [number, number] => [p.x, spec.column === "value2" ? (p.value2 as number) : p.value])
    .sort((a, b) => a[0] - b[0]);
}

export function render(spec: FigureSpec, rows: SweepRow[], overlays: OverlayData[]): RenderResult {
  const groups = groupRows(rows, spec);
  const overlayLines = overlays.map(overlayValues);

  const xs = rows.map((r) => r.axis_value).concat(overlayLines.flat().map(([x]) => x));
  const ys = rows
    .flatMap((r) => [r.p_hat, r.ci_low, r.ci_high])
    .concat(overlayLines.flat().map(([, y]) => y));
  let xLo = xs.length ? Math.min(...xs) : 0;
  let xHi = xs.length ? Math.max(...xs) : 1;
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const yLo = Math.min(0, ...ys);
  const yHi = Math.max(1, ...ys);

  const margin = {
    top: spec.title === undefined ? 18 : 42,
    right: 172,
    bottom: 48,
    left: 58,
  };
  const plotW = Math.max(40, spec.width - margin.left - margin.right);
  const plotH = Math.max(40, spec.height - margin.top - margin.bottom);
  const x = scaleLinear().domain([xLo, xHi]).range([margin.left, margin.left + plotW]).nice();
  const y = scaleLinear().domain([yLo, yHi]).range([margin.top + plotH, margin.top]).nice();

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(spec.width)}" height="${fmt(spec.height)}" ` +
      `viewBox="0 0 ${fmt(spec.width)} ${fmt(spec.height)}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(tag("rect", { x: 0, y: 0, width: spec.width, height: spec.height, fill: "#ffffff" }));
  if (spec.title !== undefined) {
    parts.push(
      tag(
        "text",
        { x: margin.left + plotW / 2, y: 20, "text-anchor": "middle", "font-size": "14", "font-weight": "bold" },
        esc(spec.title),
      ),
    );
  }

  // grid and axes
  for (const t of y.ticks(6)) {
    parts.push(
      tag("line", { x1: x.range()[0], y1: y(t), x2: x.range()[1], y2: y(t), stroke: "#e4e4e4" }),
    );
    parts.push(
      tag(
        "text",
        { x: margin.left - 8, y: y(t) + 4, "text-anchor": "end", fill: "#333333" },
        esc(fmt(t)),
      ),
    );
  }
  for (const t of x.ticks(8)) {
    parts.push(
      tag("line", { x1: x(t), y1: y.range()[0], x2: x(t), y2: y.range()[0] + 4, stroke: "#333333" }),
    );
    parts.push(
      tag(
        "text",
        { x: x(t), y: y.range()[0] + 18, "text-anchor": "middle", fill: "#333333" },
        esc(fmt(t)),
      ),
    );
  }
  parts.push(
    tag("line", { x1: x.range()[0], y1: y.range()[0], x2: x.range()[1], y2: y.range()[0], stroke: "#333333" }),
  );
  parts.push(
    tag("line", { x1: x.range()[0], y1: y.range()[0], x2: x.range()[0], y2: y.range()[1], stroke: "#333333" }),
  );
  parts.push(
    tag(
      "text",
      { x: margin.left + plotW / 2, y: spec.height - 10, "text-anchor": "middle" },
      esc(spec.xLabel),
    ),
  );
  parts.push(
    tag(
      "text",
      {
        x: 16,
        y: margin.top + plotH / 2,
        "text-anchor": "middle",
        transform: `rotate(-90 16 ${fmt(margin.top + plotH / 2)})`,
      },
      esc(spec.yLabel),
    ),
  );

  // confidence bands under everything else
  for (const g of groups) {
    const upper = g.rows.map((r): [number, number] => [x(r.axis_value), y(r.ci_high)]);
    const lower = g.rows.map((r): [number, number] => [x(r.axis_value), y(r.ci_low)]);
    parts.push(
      tag("path", { class: "band", d: bandPath(upper, lower), fill: g.color, "fill-opacity": "0.16", stroke: "none" }),
    );
  }

  for (let i = 0; i < overlays.length; i++) {
    const line = overlayLines[i].map((p): [number, number] => [x(p[0]), y(p[1])]);
    const attrs: Record<string, string> = {
      class: "overlay",
      d: linePath(line),
      fill: "none",
      stroke: overlays[i].spec.color,
      "stroke-width": "1.4",
    };
    if (overlays[i].spec.dash) attrs["stroke-dasharray"] = "6 4";
    parts.push(tag("path", attrs));
  }

  let pointCount = 0;
  for (const g of groups) {
    const line = g.rows.map((r): [number, number] => [x(r.axis_value), y(r.p_hat)]);
    parts.push(
      tag("path", { class: "curve", d: linePath(line), fill: "none", stroke: g.color, "stroke-width": "1.8" }),
    );
    for (const r of g.rows) {
      parts.push(
        tag("circle", { class: "pt", cx: x(r.axis_value), cy: y(r.p_hat), r: 2, fill: g.color }),
      );
      pointCount += 1;
    }
  }

  // legend to the right of the plot, curves first, overlays after
  const legendX = margin.left + plotW + 14;
  let legendY = margin.top + 6;
  for (const g of groups) {
    parts.push(
      tag("line", { x1: legendX, y1: legendY, x2: legendX + 22, y2: legendY, stroke: g.color, "stroke-width": "1.8" }),
    );
    parts.push(tag("text", { x: legendX + 28, y: legendY + 4, "font-size": "11" }, esc(g.label)));
    legendY += 17;
  }
  for (let i = 0; i < overlays.length; i++) {
    const attrs: Record<string, string | number> = {
      x1: legendX,
      y1: legendY,
      x2: legendX + 22,
      y2: legendY,
      stroke: overlays[i].spec.color,
      "stroke-width": "1.4",
    };
    if (overlays[i].spec.dash) attrs["stroke-dasharray"] = "6 4";
    parts.push(tag("line", attrs));
    parts.push(tag("text", { x: legendX + 28, y: legendY + 4, "font-size": "11" }, esc(overlays[i].spec.curve)));
    legendY += 17;
  }

  parts.push("</svg>");
  return {
    svg: parts.join("\n") + "\n",
    points: pointCount,
    rows: rows.length,
    curves: groups.length,
    overlays: overlays.length,
  };
}
