import type { Curve } from "./curves.js";

/** Convergence threshold the figures mark with a horizontal line. */
export const REFERENCE_RESIDUAL = 1e-6;

// One fixed style table so the same inputs always render the same figure.
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 20, right: 30, bottom: 48, left: 64 };

const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

function niceStep(range: number, target: number): number {
  const raw = range / target;
  const mag = Math.pow(10, Math.floor(Math.log10(Math.max(raw, 1))));
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= raw) {
      return mag * m;
    }
  }
  return mag * 10;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render labeled residual histories as a semilog-y SVG figure: linear
 * iteration axis, log10 residual axis with one tick per decade, one
 * polyline per curve, and a dashed reference line at 1e-6. Output is a
 * pure function of the curves; no timestamps and no randomness.
 */
export function renderFigure(curves: Curve[]): string {
  if (curves.length === 0) {
    throw new Error("nothing to plot: no curves survived loading");
  }

  const xMax = Math.max(...curves.map((c) => c.iterations[c.iterations.length - 1]));
  const xMin = Math.min(...curves.map((c) => c.iterations[0]));
  let resMin = REFERENCE_RESIDUAL;
  let resMax = REFERENCE_RESIDUAL;
  for (const c of curves) {
    resMin = Math.min(resMin, ...c.residuals);
    resMax = Math.max(resMax, ...c.residuals);
  }
  const decTop = Math.ceil(Math.log10(resMax));
  const decBottom = Math.floor(Math.log10(resMin));

  const px = (iter: number) =>
    MARGIN.left + ((iter - xMin) / Math.max(xMax - xMin, 1)) * PLOT_W;
  const py = (res: number) =>
    MARGIN.top + ((decTop - Math.log10(res)) / Math.max(decTop - decBottom, 1)) * PLOT_H;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  // y grid and decade ticks
  const decStep = decTop - decBottom > 12 ? 2 : 1;
  for (let e = decTop; e >= decBottom; e -= decStep) {
    const y = py(Math.pow(10, e)).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + PLOT_W}" y2="${y}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">1e${e}</text>`,
    );
  }

  // x ticks
  const xStep = niceStep(xMax - xMin, 8);
  for (let t = Math.ceil(xMin / xStep) * xStep; t <= xMax; t += xStep) {
    const x = px(t).toFixed(2);
    const yAxis = MARGIN.top + PLOT_H;
    parts.push(`<line x1="${x}" y1="${yAxis}" x2="${x}" y2="${yAxis + 5}" stroke="black"/>`);
    parts.push(`<text x="${x}" y="${yAxis + 18}" text-anchor="middle">${t}</text>`);
  }

  // frame and axis labels
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" ` +
      `fill="none" stroke="black"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 10}" text-anchor="middle">iteration</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + PLOT_H / 2})">relative residual</text>`,
  );

  // reference threshold
  const yRef = py(REFERENCE_RESIDUAL).toFixed(2);
  parts.push(
    `<line id="reference" x1="${MARGIN.left}" y1="${yRef}" x2="${MARGIN.left + PLOT_W}" ` +
      `y2="${yRef}" stroke="#888888" stroke-dasharray="6 4"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + PLOT_W - 4}" y="${Number(yRef) - 4}" text-anchor="end" ` +
      `fill="#888888">1e-6</text>`,
  );

  // curves
  curves.forEach((curve, i) => {
    const color = COLORS[i % COLORS.length];
    const points = curve.iterations
      .map((iter, k) => `${px(iter).toFixed(2)},${py(curve.residuals[k]).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline class="curve" data-label="${escapeXml(curve.label)}" points="${points}" ` +
        `fill="none" stroke="${color}" stroke-width="1.8"/>`,
    );
  });

  // legend
  curves.forEach((curve, i) => {
    const color = COLORS[i % COLORS.length];
    const y = MARGIN.top + 14 + i * 18;
    const x = MARGIN.left + PLOT_W - 140;
    parts.push(`<line x1="${x}" y1="${y}" x2="${x + 22}" y2="${y}" stroke="${color}" stroke-width="1.8"/>`);
    parts.push(`<text x="${x + 28}" y="${y + 4}">${escapeXml(curve.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
