// Visual encodings: node radius from centrality, link width/opacity from weight.

export interface RadiusScale {
  (value: number): number;
}

/** Monotone (strictly increasing) radius encoding over the value range.
 *  Area-proportional within [minRadius, maxRadius]; constant input maps to
 *  the midpoint. */
export function radiusScale(
  values: number[],
  minRadius = 4,
  maxRadius = 22
): RadiusScale {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  if (!(hi > lo)) {
    return () => (minRadius + maxRadius) / 2;
  }
  const loArea = minRadius * minRadius;
  const hiArea = maxRadius * maxRadius;
  return (value: number) => {
    const t = (value - lo) / (hi - lo);
    return Math.sqrt(loArea + t * (hiArea - loArea));
  };
}

/** Logarithmically scaled line width for link weights. */
export function widthScale(weights: number[], maxWidth = 8): (w: number) => number {
  const hi = Math.max(1, ...weights);
  const denominator = Math.log1p(hi);
  return (w: number) => 0.75 + (maxWidth - 0.75) * (Math.log1p(w) / denominator);
}

/** Link opacity also encodes weight, compressed to stay readable. */
export function opacityScale(weights: number[]): (w: number) => number {
  const hi = Math.max(1, ...weights);
  return (w: number) => 0.25 + 0.65 * Math.sqrt(w / hi);
}

/** Indices ordered the same way two arrays are ordered; used to check that
 *  radius ordering tracks centrality ordering. */
export function ordering(values: number[]): number[] {
  return values
    .map((value, index) => ({ value, index }))
    .sort((a, b) => a.value - b.value || a.index - b.index)
    .map((entry) => entry.index);
}
