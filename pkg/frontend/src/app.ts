// Browser entry point: network canvas, time slider, coordinated panels.

import * as d3 from "d3";

import { renderRanking, renderTimeSeries, rankingRows } from "./charts.js";
import { centralities, fetchDataset, type Dataset } from "./data.js";
import { ContinuityLayout, type LayoutNode } from "./layout.js";
import { opacityScale, radiusScale, widthScale } from "./scales.js";
import {
  gotoPeriod,
  initialPeriodIndex,
  initialState,
  selectNode,
  setThreshold,
  stepPeriod,
  togglePin,
  toggleVariant,
  type ViewState,
} from "./state.js";

const WIDTH = 900;
const HEIGHT = 620;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function svgEl(id: string): SVGSVGElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as unknown as SVGSVGElement;
}

function showBanner(message: string): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message;
  banner.style.display = "block";
}

class Explorer {
  private state: ViewState;
  private layout: ContinuityLayout;
  private hovered: string | null = null;
  private svg = d3.select<SVGSVGElement, unknown>("#network");

  constructor(private dataset: Dataset) {
    const params = new URLSearchParams(window.location.search);
    this.state = initialState(
      dataset.panel.periods.length,
      initialPeriodIndex(window.location.search, dataset.panel.periods)
    );
    if (params.get("variant") === "raw") this.state = toggleVariant(this.state);
    this.layout = new ContinuityLayout(dataset.panel.nodes, WIDTH, HEIGHT);
    this.layout.setLinks(this.currentDocument(), this.state.weightThreshold, 1.0);
    this.layout.onTick(() => this.redrawPositions());
    this.buildControls();
    this.rebuild();
  }

  private currentDocument() {
    return this.dataset.documents[this.state.periodIndex];
  }

  private buildControls(): void {
    const slider = el<HTMLInputElement>("period-slider");
    slider.min = "0";
    slider.max = String(this.state.periodCount - 1);
    slider.value = String(this.state.periodIndex);
    slider.addEventListener("input", () => {
      this.update(gotoPeriod(this.state, Number(slider.value)));
    });
    el<HTMLButtonElement>("prev").addEventListener("click", () =>
      this.update(stepPeriod(this.state, -1))
    );
    el<HTMLButtonElement>("next").addEventListener("click", () =>
      this.update(stepPeriod(this.state, 1))
    );
    const variant = el<HTMLInputElement>("variant-toggle");
    variant.addEventListener("change", () => this.update(toggleVariant(this.state)));
    const threshold = el<HTMLInputElement>("threshold");
    threshold.addEventListener("input", () =>
      this.update(setThreshold(this.state, Number(threshold.value)))
    );
  }

  private update(next: ViewState): void {
    const periodChanged = next.periodIndex !== this.state.periodIndex;
    const thresholdChanged = next.weightThreshold !== this.state.weightThreshold;
    this.state = next;
    if (periodChanged || thresholdChanged) {
      // warm start: node objects keep their positions, only links change
      this.layout.setLinks(this.currentDocument(), this.state.weightThreshold);
    }
    this.rebuild();
  }

  private rebuild(): void {
    const doc = this.currentDocument();
    const values = centralities(this.dataset, this.state.periodIndex, this.state.variant);
    const radius = radiusScale(values);
    const weights = doc.links.map((l) => l.weight);
    const width = widthScale(weights);
    const opacity = opacityScale(weights);

    el<HTMLSpanElement>("period-label").textContent =
      this.dataset.panel.periods[this.state.periodIndex];
    el<HTMLInputElement>("period-slider").value = String(this.state.periodIndex);
    el<HTMLInputElement>("variant-toggle").checked = this.state.variant === "raw";

    const visible = doc.links.filter((l) => l.weight > this.state.weightThreshold);
    this.svg
      .select("g.links")
      .selectAll<SVGLineElement, (typeof visible)[number]>("line")
      .data(visible, (l) => `${l.source}-${l.target}`)
      .join("line")
      .attr("stroke", "#7a93ad")
      .attr("stroke-width", (l) => width(l.weight))
      .attr("stroke-opacity", (l) => opacity(l.weight));

    const nodes = this.svg
      .select("g.nodes")
      .selectAll<SVGGElement, LayoutNode>("g.node")
      .data(this.layout.nodes, (n) => n.label)
      .join((enter) => {
        const g = enter.append("g").attr("class", "node");
        g.append("circle");
        g.append("text")
          .attr("dy", -4)
          .attr("text-anchor", "middle")
          .attr("font-size", 9);
        return g;
      });

    nodes
      .select("circle")
      .attr("r", (n) => radius(values[this.dataset.panel.nodes.indexOf(n.label)]))
      .attr("fill", (n) => {
        const record = doc.nodes[this.dataset.panel.nodes.indexOf(n.label)];
        return record.is_gsib ? "#e8923c" : "#6d9dc5";
      })
      .attr("stroke", (n) =>
        n.label === this.state.selected
          ? "#b3330e"
          : this.state.pinned.has(n.label)
            ? "#333"
            : "#fff"
      )
      .attr("stroke-width", (n) =>
        n.label === this.state.selected || this.state.pinned.has(n.label) ? 2.5 : 1
      );
    nodes
      .select("text")
      .text((n) => n.label)
      .attr("dy", (n) => -radius(values[this.dataset.panel.nodes.indexOf(n.label)]) - 2);

    nodes
      .on("click", (_, n) => this.update(selectNode(this.state, n.label)))
      .on("dblclick", (event, n) => {
        event.preventDefault();
        this.update(togglePin(this.state, n.label));
        this.layout.setPinned(this.state.pinned);
      })
      .call(
        d3
          .drag<SVGGElement, LayoutNode>()
          .on("start", (_, n) => this.layout.dragStart(n.label))
          .on("drag", (event, n) => this.layout.dragTo(n.label, event.x, event.y))
          .on("end", (_, n) =>
            this.layout.dragEnd(n.label, this.state.pinned.has(n.label))
          )
      )
      .on("mouseenter", (_, n) => this.hover(n.label))
      .on("mouseleave", () => this.hover(null));

    this.redrawPositions();
    this.renderPanels();
  }

  /** Transient hover coordination: chart hover lights up the network node
   *  and network hover lights up the chart series, without touching the
   *  sticky selection. */
  private hover(label: string | null): void {
    this.hovered = label;
    this.highlight(label ?? this.state.selected);
    this.renderPanels();
  }

  private highlight(label: string | null): void {
    this.svg
      .selectAll<SVGGElement, LayoutNode>("g.node circle")
      .attr("stroke", (n) =>
        n.label === label ? "#b3330e" : this.state.pinned.has(n.label) ? "#333" : "#fff"
      );
  }

  private redrawPositions(): void {
    const positions = this.layout.positions();
    const doc = this.currentDocument();
    const visible = doc.links.filter((l) => l.weight > this.state.weightThreshold);
    this.svg
      .select("g.links")
      .selectAll<SVGLineElement, (typeof visible)[number]>("line")
      .attr("x1", (l) => positions.get(this.dataset.panel.nodes[l.source as number])?.x ?? 0)
      .attr("y1", (l) => positions.get(this.dataset.panel.nodes[l.source as number])?.y ?? 0)
      .attr("x2", (l) => positions.get(this.dataset.panel.nodes[l.target as number])?.x ?? 0)
      .attr("y2", (l) => positions.get(this.dataset.panel.nodes[l.target as number])?.y ?? 0);
    this.svg
      .selectAll<SVGGElement, LayoutNode>("g.node")
      .attr("transform", (n) => `translate(${n.x ?? 0},${n.y ?? 0})`);
  }

  private renderPanels(): void {
    const callbacks = {
      onSelect: (label: string | null) => this.update(selectNode(this.state, label)),
      onHover: (label: string | null) => this.hover(label),
    };
    const highlighted = this.hovered ?? this.state.selected;
    renderRanking(
      svgEl("ranking"),
      rankingRows(this.dataset, this.state.periodIndex, this.state.variant),
      highlighted,
      callbacks
    );
    renderTimeSeries(
      svgEl("series"),
      this.dataset,
      this.state.variant,
      this.state.periodIndex,
      highlighted,
      callbacks
    );
  }
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("data") ?? "./";
  try {
    const dataset = await fetchDataset(base.endsWith("/") ? base : base + "/");
    new Explorer(dataset);
  } catch (error) {
    showBanner(`failed to load export: ${(error as Error).message}`);
  }
}

start();
