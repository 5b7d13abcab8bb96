import type { PosCode } from "./api.js";

export interface ViewState {
  activePos: PosCode;
  root: string | null;
  threshold: number;
  maxWeight: number;
  selectedCluster: number | null;
  selectedComponent: string | null;
}

export function initialViewState(): ViewState {
  return {
    activePos: "N",
    root: null,
    threshold: 0,
    maxWeight: 0,
    selectedCluster: null,
    selectedComponent: null,
  };
}

// The slider is only meaningful inside [0, max edge weight of the
// active graph]; everything else is folded back into that range.
export function clampThreshold(value: number, maxWeight: number): number {
  if (Number.isNaN(value) || value < 0) return 0;
  return Math.min(value, Math.max(maxWeight, 0));
}

export function withPos(state: ViewState, pos: PosCode): ViewState {
  if (pos === state.activePos) return state;
  // cluster ids and roots are per-category; the component selection
  // points into the shared catalogue and survives the switch
  return {
    ...state,
    activePos: pos,
    root: null,
    selectedCluster: null,
  };
}

export function withGraphBounds(state: ViewState, maxWeight: number): ViewState {
  const bound = Number.isFinite(maxWeight) && maxWeight > 0 ? maxWeight : 0;
  return {
    ...state,
    maxWeight: bound,
    threshold: clampThreshold(state.threshold, bound),
  };
}

export function withThreshold(state: ViewState, value: number): ViewState {
  return { ...state, threshold: clampThreshold(value, state.maxWeight) };
}

export function withRoot(state: ViewState, root: string | null): ViewState {
  return { ...state, root };
}

export function withCluster(state: ViewState, cluster: number | null): ViewState {
  return { ...state, selectedCluster: cluster };
}

export function withComponent(state: ViewState, component: string | null): ViewState {
  return { ...state, selectedComponent: component };
}
