import { readFileSync } from "node:fs";
import { basename, extname } from "node:path";
import Papa from "papaparse";

/** One labeled residual history: (iteration, relative residual) points. */
export interface Curve {
  label: string;
  iterations: number[];
  residuals: number[];
}

interface Row {
  iter: number;
  relative_residual: number;
}

/** Strip directory and extension: runs/apu10.csv becomes apu10. */
export function fileStem(path: string): string {
  const base = basename(path);
  return base.slice(0, base.length - extname(base).length);
}

/**
 * Parse one benchmark CSV (header iter,relative_residual) into a curve.
 * Throws on malformed content: missing columns, non-numeric values,
 * non-ascending integer iterations, or residuals that cannot go on a
 * log axis (zero or below).
 */
export function parseCurve(csvText: string, label: string): Curve {
  const parsed = Papa.parse<Row>(csvText, {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`bad CSV: ${parsed.errors[0].message}`);
  }
  const iterations: number[] = [];
  const residuals: number[] = [];
  for (const row of parsed.data) {
    const { iter, relative_residual: res } = row;
    if (typeof iter !== "number" || typeof res !== "number" || !Number.isFinite(res)) {
      throw new Error("bad CSV: expected numeric iter,relative_residual rows");
    }
    if (!Number.isInteger(iter)) {
      throw new Error(`bad CSV: iteration ${iter} is not an integer`);
    }
    if (iterations.length > 0 && iter <= iterations[iterations.length - 1]) {
      throw new Error(`bad CSV: iterations not ascending at ${iter}`);
    }
    if (res <= 0) {
      throw new Error(`bad CSV: residual ${res} is not log-plottable`);
    }
    iterations.push(iter);
    residuals.push(res);
  }
  return { label, iterations, residuals };
}

/**
 * Load curves from CSV paths, pairing each with its label; paths beyond
 * the label list fall back to the file stem. Files that are missing,
 * malformed, or too short to draw a segment (fewer than two points) are
 * skipped through the warn callback instead of failing the whole figure.
 */
export function loadCurves(
  paths: string[],
  labels: string[],
  warn: (message: string) => void = (m) => console.warn(m),
): Curve[] {
  if (labels.length > paths.length) {
    throw new Error(`${labels.length} labels for ${paths.length} inputs`);
  }
  const curves: Curve[] = [];
  paths.forEach((path, i) => {
    const label = i < labels.length ? labels[i] : fileStem(path);
    let text: string;
    try {
      text = readFileSync(path, "utf8");
    } catch {
      warn(`skipping ${path}: cannot read file`);
      return;
    }
    let curve: Curve;
    try {
      curve = parseCurve(text, label);
    } catch (err) {
      warn(`skipping ${path}: ${(err as Error).message}`);
      return;
    }
    if (curve.iterations.length < 2) {
      warn(`skipping ${path}: only ${curve.iterations.length} point(s), nothing to draw`);
      return;
    }
    curves.push(curve);
  });
  return curves;
}
