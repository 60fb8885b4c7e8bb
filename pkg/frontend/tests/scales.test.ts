import { describe, expect, it } from "vitest";

import { centralities } from "../dist/data.js";
import { ordering, opacityScale, radiusScale, widthScale } from "../dist/scales.js";
import { loadFixtureDataset } from "./fixtures";

describe("radius encoding", () => {
  const dataset = loadFixtureDataset();

  it("radius ordering equals centrality ordering in every period and variant", () => {
    for (let t = 0; t < dataset.panel.periods.length; t++) {
      for (const variant of ["smoothed", "raw"] as const) {
        const values = centralities(dataset, t, variant);
        const radius = radiusScale(values);
        const radii = values.map(radius);
        expect(ordering(radii)).toEqual(ordering(values));
      }
    }
  });

  it("is strictly monotone on distinct values", () => {
    const radius = radiusScale([1, 2, 5]);
    expect(radius(1)).toBeLessThan(radius(2));
    expect(radius(2)).toBeLessThan(radius(5));
  });

  it("equal centralities get equal radii", () => {
    const radius = radiusScale([3, 3, 7]);
    expect(radius(3)).toBe(radius(3));
  });

  it("constant input maps to a usable midpoint radius", () => {
    const radius = radiusScale([2, 2, 2], 4, 22);
    expect(radius(2)).toBe(13);
  });

  it("respects the configured range", () => {
    const radius = radiusScale([0, 10], 4, 22);
    expect(radius(0)).toBeCloseTo(4, 10);
    expect(radius(10)).toBeCloseTo(22, 10);
  });
});

describe("link encodings", () => {
  it("log width compresses large weight ratios", () => {
    const width = widthScale([1, 100]);
    const ratio = width(100) / width(1);
    expect(width(100)).toBeGreaterThan(width(1)); // visibly different
    expect(ratio).toBeLessThan(20); // far below the 100x weight ratio
  });

  it("width is monotone in weight", () => {
    const width = widthScale([1, 5, 25]);
    expect(width(1)).toBeLessThan(width(5));
    expect(width(5)).toBeLessThan(width(25));
  });

  it("opacity stays in a readable band", () => {
    const opacity = opacityScale([1, 50]);
    for (const w of [1, 10, 50]) {
      expect(opacity(w)).toBeGreaterThan(0.2);
      expect(opacity(w)).toBeLessThanOrEqual(0.95);
    }
  });
});
