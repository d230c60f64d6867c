import { describe, expect, it } from "vitest";
import type { Curve } from "../src/curves.js";
import { REFERENCE_RESIDUAL, renderFigure } from "../src/figure.js";

const demo: Curve[] = [
  { label: "fast", iterations: [0, 1, 2, 3], residuals: [1.0, 1e-2, 1e-5, 1e-8] },
  { label: "slow", iterations: [0, 1, 2, 3, 4, 5], residuals: [1.0, 0.5, 0.2, 0.1, 0.05, 0.02] },
];

describe("renderFigure", () => {
  it("is deterministic", () => {
    expect(renderFigure(demo)).toBe(renderFigure(demo));
  });

  it("draws one polyline per curve plus the reference line", () => {
    const svg = renderFigure(demo);
    expect(svg.match(/<polyline/g)).toHaveLength(2);
    expect(svg).toContain('id="reference"');
    expect(svg).toContain("1e-6</text>");
  });

  it("places the reference line on the 1e-6 decade", () => {
    const svg = renderFigure(demo);
    const ref = svg.match(/id="reference"[^>]*y1="([0-9.]+)"/);
    const exp = Math.log10(REFERENCE_RESIDUAL);
    const tick = svg.match(new RegExp(`y="([0-9.]+)"[^>]*>1e${exp}</text>`));
    expect(ref).not.toBeNull();
    expect(tick).not.toBeNull();
    expect(Number(ref![1])).toBeCloseTo(Number(tick![1]), 6);
  });

  it("escapes markup in labels", () => {
    const svg = renderFigure([
      { label: "a<&>b", iterations: [0, 1], residuals: [1.0, 0.5] },
    ]);
    expect(svg).toContain('data-label="a&lt;&amp;&gt;b"');
    expect(svg).not.toContain("a<&>b");
  });

  it("refuses an empty curve list", () => {
    expect(() => renderFigure([])).toThrow(/no curves/);
  });
});
