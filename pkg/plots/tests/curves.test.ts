import { readFileSync, writeFileSync, mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { fileStem, loadCurves, parseCurve } from "../src/curves.js";
import { renderFigure } from "../src/figure.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

function tempCsv(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "curves-"));
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

describe("parseCurve", () => {
  it("reads iter,relative_residual rows in order", () => {
    const curve = parseCurve("iter,relative_residual\n0,1.0\n1,0.5\n2,0.01\n", "demo");
    expect(curve.label).toBe("demo");
    expect(curve.iterations).toEqual([0, 1, 2]);
    expect(curve.residuals).toEqual([1.0, 0.5, 0.01]);
  });

  it("rejects residuals that cannot go on a log axis", () => {
    expect(() => parseCurve("iter,relative_residual\n0,1.0\n1,0.0\n", "x")).toThrow(/log-plottable/);
    expect(() => parseCurve("iter,relative_residual\n0,1.0\n1,-0.5\n", "x")).toThrow(/log-plottable/);
  });

  it("rejects non-ascending or fractional iterations", () => {
    expect(() => parseCurve("iter,relative_residual\n0,1.0\n0,0.5\n", "x")).toThrow(/ascending/);
    expect(() => parseCurve("iter,relative_residual\n0,1.0\n1.5,0.5\n", "x")).toThrow(/integer/);
  });
});

describe("loadCurves", () => {
  it("renders a two-point series as one line segment", () => {
    const path = tempCsv("two.csv", "iter,relative_residual\n0,1.0\n1,0.25\n");
    const curves = loadCurves([path], []);
    expect(curves).toHaveLength(1);
    const svg = renderFigure(curves);
    const match = svg.match(/<polyline[^>]*points="([^"]*)"/);
    expect(match).not.toBeNull();
    expect(match![1].split(" ")).toHaveLength(2);
  });

  it("defaults missing labels to file stems", () => {
    const a = tempCsv("apu10.csv", "iter,relative_residual\n0,1.0\n1,0.5\n");
    const b = tempCsv("napu.csv", "iter,relative_residual\n0,1.0\n1,0.9\n");
    expect(loadCurves([a, b], []).map((c) => c.label)).toEqual(["apu10", "napu"]);
    expect(loadCurves([a, b], ["APU"]).map((c) => c.label)).toEqual(["APU", "napu"]);
    expect(() => loadCurves([a], ["x", "y"])).toThrow(/2 labels for 1 inputs/);
  });

  it("skips missing, short, and malformed files with a warning", () => {
    const good = tempCsv("good.csv", "iter,relative_residual\n0,1.0\n1,0.5\n");
    const short = tempCsv("short.csv", "iter,relative_residual\n0,1.0\n");
    const bad = tempCsv("bad.csv", "iter,relative_residual\n0,1.0\n1,nope\n");
    const warnings: string[] = [];
    const curves = loadCurves(
      [good, "/no/such/file.csv", short, bad],
      [],
      (m) => warnings.push(m),
    );
    expect(curves.map((c) => c.label)).toEqual(["good"]);
    expect(warnings).toHaveLength(3);
    expect(warnings[0]).toMatch(/cannot read/);
    expect(warnings[1]).toMatch(/nothing to draw/);
    expect(warnings[2]).toMatch(/numeric/);
  });

  it("never modifies its input files", () => {
    const path = join(FIXTURES, "channel16", "napu.csv");
    const before = readFileSync(path, "utf8");
    loadCurves([path], [], () => {});
    expect(readFileSync(path, "utf8")).toBe(before);
  });
});

describe("fileStem", () => {
  it("strips directories and the extension", () => {
    expect(fileStem("runs/table2/apu10.csv")).toBe("apu10");
    expect(fileStem("napu.csv")).toBe("napu");
    expect(fileStem("noext")).toBe("noext");
  });
});
