import {
  forceCenter,
  forceLink,
  forceManyBody,
  forceSimulation,
  type Simulation,
  type SimulationLinkDatum,
  type SimulationNodeDatum,
} from "d3-force";

import type { LinkRecord, NetworkDocument } from "./types.js";

export interface LayoutNode extends SimulationNodeDatum {
  label: string;
  index?: number;
}

export type LayoutLink = SimulationLinkDatum<LayoutNode> & { weight: number };

/** Fraction of the link union that differs between two link sets; weight
 *  shifts beyond 25% count as half a change. Drives how much energy a
 *  period step injects: an unchanged network gets only a nudge. */
export function linkChangeFraction(
  previous: { source: number; target: number; weight: number }[],
  next: { source: number; target: number; weight: number }[]
): number {
  const key = (l: { source: number; target: number }) => `${l.source}-${l.target}`;
  const before = new Map(previous.map((l) => [key(l), l.weight]));
  const after = new Map(next.map((l) => [key(l), l.weight]));
  let union = 0;
  let changed = 0;
  for (const k of new Set([...before.keys(), ...after.keys()])) {
    union += 1;
    const a = before.get(k);
    const b = after.get(k);
    if (a === undefined || b === undefined) changed += 1;
    else if (Math.abs(a - b) / Math.max(a, b) > 0.25) changed += 0.5;
  }
  return union ? changed / union : 0;
}

/** Force layout with positional continuity across periods.
 *
 *  Node objects persist for the lifetime of the layout; switching periods
 *  replaces only the link set and reheats, so positions warm-start from the
 *  previous cross section. Pinned nodes carry fx/fy and are immovable until
 *  released. */
export class ContinuityLayout {
  readonly nodes: LayoutNode[];
  private simulation: Simulation<LayoutNode, LayoutLink>;
  private currentLinks: LinkRecord[] = [];
  private linkForce = forceLink<LayoutNode, LayoutLink>([]).distance(
    (l) => 30 + 90 / Math.sqrt(l.weight)
  );

  constructor(labels: string[], width = 900, height = 600, seedSpacing = 40) {
    // deterministic initial placement on a ring; the simulation relaxes it
    this.nodes = labels.map((label, i) => {
      const angle = (2 * Math.PI * i) / labels.length;
      const radius = seedSpacing * Math.sqrt(labels.length);
      return {
        label,
        x: width / 2 + radius * Math.cos(angle),
        y: height / 2 + radius * Math.sin(angle),
      };
    });
    this.simulation = forceSimulation(this.nodes)
      .force("charge", forceManyBody().strength(-120))
      .force("center", forceCenter(width / 2, height / 2))
      .force("link", this.linkForce)
      .velocityDecay(0.6)
      .stop();
  }

  /** Swap in a period's links (above the weight threshold) and reheat.
   *
   *  Without an explicit reheat, the injected energy scales with how much
   *  the visible link set changed, so stepping to an identical network is
   *  a fixed point up to a nudge while a regime shift re-optimizes hard. */
  setLinks(document: NetworkDocument, threshold = 0, reheat?: number): void {
    const visible = document.links.filter((l: LinkRecord) => l.weight > threshold);
    if (reheat === undefined) {
      const change = linkChangeFraction(this.currentLinks, visible);
      reheat = Math.min(0.6, 0.015 + 0.55 * change);
    }
    this.currentLinks = visible;
    const links: LayoutLink[] = visible.map((l) => ({
      source: l.source,
      target: l.target,
      weight: l.weight,
    }));
    this.linkForce.links(links);
    this.simulation.alpha(reheat).restart();
  }

  /** Advance the simulation until it cools below alphaMin. */
  settle(maxTicks = 500): void {
    let ticks = 0;
    while (this.simulation.alpha() > this.simulation.alphaMin() && ticks < maxTicks) {
      this.simulation.tick();
      ticks += 1;
    }
  }

  tick(): void {
    this.simulation.tick();
  }

  onTick(listener: () => void): void {
    this.simulation.on("tick", listener);
  }

  positions(): Map<string, { x: number; y: number }> {
    return new Map(this.nodes.map((n) => [n.label, { x: n.x ?? 0, y: n.y ?? 0 }]));
  }

  /** Begin a drag: the node follows the pointer exactly. */
  dragStart(label: string): void {
    const node = this.byLabel(label);
    node.fx = node.x;
    node.fy = node.y;
    this.simulation.alphaTarget(0.3).restart();
  }

  dragTo(label: string, x: number, y: number): void {
    const node = this.byLabel(label);
    node.fx = x;
    node.fy = y;
  }

  /** Release a drag; unpinned nodes rejoin the simulation, which then
   *  counter-optimizes the neighborhood around the new position. */
  dragEnd(label: string, pinned: boolean): void {
    const node = this.byLabel(label);
    this.simulation.alphaTarget(0);
    if (!pinned) {
      node.fx = null;
      node.fy = null;
    }
    this.simulation.alpha(Math.max(this.simulation.alpha(), 0.3)).restart();
  }

  setPinned(labels: Set<string>): void {
    for (const node of this.nodes) {
      if (labels.has(node.label)) {
        node.fx = node.x;
        node.fy = node.y;
      } else {
        node.fx = null;
        node.fy = null;
      }
    }
  }

  private byLabel(label: string): LayoutNode {
    const node = this.nodes.find((n) => n.label === label);
    if (!node) throw new Error(`unknown node ${label}`);
    return node;
  }
}

/** Largest settled displacement between two position snapshots. */
export function maxDisplacement(
  before: Map<string, { x: number; y: number }>,
  after: Map<string, { x: number; y: number }>
): number {
  let worst = 0;
  for (const [label, b] of before) {
    const a = after.get(label);
    if (!a) continue;
    worst = Math.max(worst, Math.hypot(a.x - b.x, a.y - b.y));
  }
  return worst;
}
