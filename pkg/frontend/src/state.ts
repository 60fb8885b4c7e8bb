import type { CentralityVariant } from "./types.js";

/** View state: everything the rendering is a pure function of, apart from
 *  force-simulation jitter. */
export interface ViewState {
  periodIndex: number;
  periodCount: number;
  selected: string | null;
  pinned: Set<string>;
  variant: CentralityVariant;
  weightThreshold: number;
  running: boolean;
}

export function initialState(periodCount: number, initialIndex = 0): ViewState {
  if (periodCount < 1) throw new Error("need at least one period");
  return {
    periodIndex: clamp(initialIndex, 0, periodCount - 1),
    periodCount,
    selected: null,
    pinned: new Set(),
    variant: "smoothed",
    weightThreshold: 0,
    running: true,
  };
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.max(lo, Math.min(hi, value));
}

/** Step the period cursor; clamped no-op at the ends. */
export function stepPeriod(state: ViewState, direction: 1 | -1): ViewState {
  return {
    ...state,
    periodIndex: clamp(state.periodIndex + direction, 0, state.periodCount - 1),
  };
}

export function gotoPeriod(state: ViewState, index: number): ViewState {
  return { ...state, periodIndex: clamp(index, 0, state.periodCount - 1) };
}

export function togglePin(state: ViewState, label: string): ViewState {
  const pinned = new Set(state.pinned);
  if (pinned.has(label)) pinned.delete(label);
  else pinned.add(label);
  return { ...state, pinned };
}

export function selectNode(state: ViewState, label: string | null): ViewState {
  return { ...state, selected: label };
}

export function toggleVariant(state: ViewState): ViewState {
  return { ...state, variant: state.variant === "smoothed" ? "raw" : "smoothed" };
}

export function setThreshold(state: ViewState, threshold: number): ViewState {
  return { ...state, weightThreshold: Math.max(0, threshold) };
}

/** Initial period from a `?period=2008Q2` query string, defaulting to the
 *  first period when absent or unknown. */
export function initialPeriodIndex(query: string, periods: string[]): number {
  const match = new URLSearchParams(query).get("period");
  const index = match ? periods.indexOf(match) : -1;
  return index >= 0 ? index : 0;
}
