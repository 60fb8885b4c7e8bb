// Coordinated panels: centrality ranking bars and per-node time series.

import * as d3 from "d3";

import type { Dataset } from "./data.js";
import { centralities } from "./data.js";
import type { CentralityVariant } from "./types.js";

export interface RankingRow {
  label: string;
  value: number;
}

/** Ranking rows for one period, largest centrality first. */
export function rankingRows(
  dataset: Dataset,
  periodIndex: number,
  variant: CentralityVariant
): RankingRow[] {
  const values = centralities(dataset, periodIndex, variant);
  return dataset.panel.nodes
    .map((label, i) => ({ label, value: values[i] }))
    .sort((a, b) => b.value - a.value || a.label.localeCompare(b.label));
}

/** Per-node centrality series under the selected variant (nulls filled from
 *  the smoothed series, mirroring the radius fallback). */
export function nodeSeries(
  dataset: Dataset,
  variant: CentralityVariant
): Map<string, number[]> {
  const series = new Map<string, number[]>();
  dataset.panel.nodes.forEach((label, i) => {
    series.set(
      label,
      dataset.panel.periods.map((_, t) => centralities(dataset, t, variant)[i])
    );
  });
  return series;
}

interface PanelCallbacks {
  onSelect: (label: string | null) => void;
  onHover?: (label: string | null) => void;
}

export function renderRanking(
  container: SVGSVGElement,
  rows: RankingRow[],
  selected: string | null,
  callbacks: PanelCallbacks
): void {
  const svg = d3.select(container);
  const width = container.clientWidth || 320;
  const rowHeight = 14;
  const margin = { top: 4, left: 86, right: 30 };
  svg.attr("height", rows.length * rowHeight + margin.top + 6);
  const x = d3
    .scaleLinear()
    .domain([0, d3.max(rows, (r) => r.value) ?? 1])
    .range([0, width - margin.left - margin.right]);

  const groups = svg
    .selectAll<SVGGElement, RankingRow>("g.row")
    .data(rows, (r) => r.label)
    .join((enter) => {
      const g = enter.append("g").attr("class", "row");
      g.append("rect").attr("height", rowHeight - 3);
      g.append("text").attr("class", "name").attr("text-anchor", "end");
      g.append("text").attr("class", "value");
      return g;
    })
    .attr("transform", (_, i) => `translate(0,${margin.top + i * rowHeight})`)
    .style("cursor", "pointer")
    .on("click", (_, r) => callbacks.onSelect(r.label === selected ? null : r.label))
    .on("mouseenter", (_, r) => callbacks.onHover?.(r.label))
    .on("mouseleave", () => callbacks.onHover?.(null));

  groups
    .select("rect")
    .attr("x", margin.left)
    .attr("width", (r) => Math.max(1, x(r.value)))
    .attr("fill", (r) => (r.label === selected ? "#e07a26" : "#5b8bc9"));
  groups
    .select("text.name")
    .attr("x", margin.left - 6)
    .attr("y", rowHeight - 5)
    .attr("font-size", 10)
    .attr("font-weight", (r) => (r.label === selected ? "bold" : "normal"))
    .text((r) => r.label);
  groups
    .select("text.value")
    .attr("x", (r) => margin.left + Math.max(1, x(r.value)) + 4)
    .attr("y", rowHeight - 5)
    .attr("font-size", 9)
    .attr("fill", "#666")
    .text((r) => r.value.toPrecision(3));
}

export function renderTimeSeries(
  container: SVGSVGElement,
  dataset: Dataset,
  variant: CentralityVariant,
  periodIndex: number,
  selected: string | null,
  callbacks: PanelCallbacks
): void {
  const svg = d3.select(container);
  const width = container.clientWidth || 420;
  const height = Number(svg.attr("height")) || 180;
  const margin = { top: 8, right: 10, bottom: 22, left: 42 };
  const series = nodeSeries(dataset, variant);
  const all = [...series.values()].flat();
  const x = d3
    .scaleLinear()
    .domain([0, dataset.panel.periods.length - 1])
    .range([margin.left, width - margin.right]);
  const y = d3
    .scaleLinear()
    .domain([d3.min(all) ?? 0, d3.max(all) ?? 1])
    .nice()
    .range([height - margin.bottom, margin.top]);
  const line = d3
    .line<number>()
    .x((_, t) => x(t))
    .y((v) => y(v));

  svg
    .selectAll<SVGPathElement, [string, number[]]>("path.series")
    .data([...series.entries()], (d) => d[0])
    .join("path")
    .attr("class", "series")
    .attr("fill", "none")
    .attr("d", (d) => line(d[1]))
    .attr("stroke", (d) => (d[0] === selected ? "#e07a26" : "#9db8d6"))
    .attr("stroke-width", (d) => (d[0] === selected ? 2.2 : 0.8))
    .attr("opacity", (d) => (selected === null || d[0] === selected ? 1 : 0.45))
    .style("cursor", "pointer")
    .on("click", (_, d) => callbacks.onSelect(d[0] === selected ? null : d[0]))
    .on("mouseenter", (_, d) => callbacks.onHover?.(d[0]))
    .on("mouseleave", () => callbacks.onHover?.(null));

  const cursor = svg.selectAll<SVGLineElement, number>("line.cursor").data([periodIndex]);
  cursor
    .join("line")
    .attr("class", "cursor")
    .attr("x1", (t) => x(t))
    .attr("x2", (t) => x(t))
    .attr("y1", margin.top)
    .attr("y2", height - margin.bottom)
    .attr("stroke", "#b33")
    .attr("stroke-dasharray", "3,2");

  const axis = svg.selectAll<SVGGElement, null>("g.x-axis").data([null]);
  const ticks = Math.min(8, dataset.panel.periods.length);
  axis
    .join("g")
    .attr("class", "x-axis")
    .attr("transform", `translate(0,${height - margin.bottom})`)
    .call(
      d3
        .axisBottom(x)
        .ticks(ticks)
        .tickFormat((t) => dataset.panel.periods[Math.round(Number(t))] ?? "")
    )
    .selectAll("text")
    .attr("font-size", 8);

  const yAxis = svg.selectAll<SVGGElement, null>("g.y-axis").data([null]);
  yAxis
    .join("g")
    .attr("class", "y-axis")
    .attr("transform", `translate(${margin.left},0)`)
    .call(d3.axisLeft(y).ticks(4));
}
