/**
 * SVG rendering of stability panels: one curve of spectral radius versus
 * nondimensional timestep per corrector count Q, a reference line at
 * rho = 1, and the y axis clipped to [0, 2] for readability.
 *
 * Rendering is a pure function of the filtered rows, so re-rendering an
 * identical CSV yields an identical SVG string.
 */

import { scaleLinear, scaleLog } from "d3-scale";
import { line } from "d3-shape";
import { PanelSpec } from "./panels.js";
import { SweepRow } from "./schema.js";

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { top: 36, right: 120, bottom: 48, left: 56 };
const Y_MAX = 2.0;

// color cycle per Q; odd Q solid, even Q dashed, making the odd/even
// stability asymmetry visible at a glance
const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

export interface Curve {
  Q: number;
  points: Array<[number, number]>; // (s, rho), ascending s
}

export function panelCurves(rows: SweepRow[], spec: PanelSpec): Curve[] {
  const selected = rows.filter(spec.match);
  if (selected.length === 0) {
    throw new Error(`panel ${spec.id}: filter selects no rows`);
  }
  const byQ = new Map<number, SweepRow[]>();
  for (const row of selected) {
    const bucket = byQ.get(row.Q) ?? [];
    bucket.push(row);
    byQ.set(row.Q, bucket);
  }
  return [...byQ.keys()].sort((a, b) => a - b).map((Q) => ({
    Q,
    points: byQ
      .get(Q)!
      .slice()
      .sort((a, b) => a.s - b.s)
      .map((r) => [r.s, r.rho] as [number, number]),
  }));
}

function fmtTick(value: number, logAxis: boolean): string {
  if (logAxis) {
    const exp = Math.log10(value);
    if (Number.isInteger(exp)) return `1e${exp}`;
    return "";
  }
  return Number(value.toPrecision(6)).toString();
}

export function renderPanel(rows: SweepRow[], spec: PanelSpec): string {
  const curves = panelCurves(rows, spec);
  const sValues = curves.flatMap((c) => c.points.map((p) => p[0]));
  const sMin = Math.min(...sValues);
  const sMax = Math.max(...sValues);
  const logAxis = spec.axis === "semilog-x";
  const x = (logAxis ? scaleLog() : scaleLinear())
    .domain([sMin, sMax])
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear().domain([0, Y_MAX]).range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const path = line<[number, number]>()
    .x((p) => x(p[0]))
    .y((p) => y(Math.min(p[1], Y_MAX * 1.05)));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<clipPath id="plot"><rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" height="${HEIGHT - MARGIN.top - MARGIN.bottom}"/></clipPath>`,
  );
  parts.push(`<text x="${WIDTH / 2}" y="20" text-anchor="middle" font-size="14">${spec.title}</text>`);

  // axes
  const axisColor = "#333";
  parts.push(
    `<line x1="${MARGIN.left}" y1="${y(0)}" x2="${WIDTH - MARGIN.right}" y2="${y(0)}" stroke="${axisColor}"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${y(0)}" x2="${MARGIN.left}" y2="${MARGIN.top}" stroke="${axisColor}"/>`,
  );
  const xTicks = logAxis ? x.ticks() : x.ticks(8);
  for (const t of xTicks) {
    const label = fmtTick(t, logAxis);
    if (label === "") continue;
    parts.push(`<line x1="${x(t)}" y1="${y(0)}" x2="${x(t)}" y2="${y(0) + 5}" stroke="${axisColor}"/>`);
    parts.push(`<text x="${x(t)}" y="${y(0) + 18}" text-anchor="middle" font-size="11">${label}</text>`);
  }
  for (const t of y.ticks(5)) {
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${y(t)}" x2="${MARGIN.left}" y2="${y(t)}" stroke="${axisColor}"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${y(t) + 4}" text-anchor="end" font-size="11">${t}</text>`);
  }
  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="12">nondimensional timestep s</text>`,
  );
  parts.push(
    `<text transform="rotate(-90)" x="${-(HEIGHT - MARGIN.bottom + MARGIN.top) / 2}" y="16" text-anchor="middle" font-size="12">spectral radius</text>`,
  );

  // rho = 1 reference
  parts.push(
    `<line x1="${MARGIN.left}" y1="${y(1)}" x2="${WIDTH - MARGIN.right}" y2="${y(1)}" stroke="#999" stroke-dasharray="2,3"/>`,
  );

  // curves and legend
  curves.forEach((curve, idx) => {
    const color = PALETTE[curve.Q % PALETTE.length];
    const dash = curve.Q % 2 === 0 ? ' stroke-dasharray="6,3"' : "";
    const d = path(curve.points) ?? "";
    parts.push(
      `<path class="curve" data-q="${curve.Q}" d="${d}" fill="none" stroke="${color}" stroke-width="1.5"${dash} clip-path="url(#plot)"/>`,
    );
    const ly = MARGIN.top + 14 * idx;
    const lx = WIDTH - MARGIN.right + 10;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${color}" stroke-width="1.5"${dash}/>`,
    );
    parts.push(`<text x="${lx + 27}" y="${ly + 4}" font-size="11">Q=${curve.Q}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
