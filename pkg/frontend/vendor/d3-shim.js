// Module facade over the UMD d3 bundle loaded by a classic script tag.
// The import map points the bare "d3" and "d3-force" specifiers here, so
// tsc output runs in the browser without a bundler.
const d3 = globalThis.d3;
if (!d3) {
  throw new Error("d3 UMD bundle must be loaded before the shim");
}
export default d3;
export const {
  select,
  selectAll,
  scaleLinear,
  axisBottom,
  axisLeft,
  line,
  drag,
  max,
  min,
  forceSimulation,
  forceLink,
  forceManyBody,
  forceCenter,
} = d3;
