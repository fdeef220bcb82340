/** Panel state and the pure transitions the UI applies to it. */

import type { Features, MatchResultPayload, ParamDescriptor } from "./api.js";

export type AbSelection = "target" | "matched";

export interface PanelState {
  descriptors: ParamDescriptor[];
  sliders: Record<string, number>;
  seed: number;
  lastFeatures: Features | null;
  activeJobId: string | null;
  abSelection: AbSelection;
  matchedParams: Record<string, number> | null;
}

export function initialState(descriptors: ParamDescriptor[]): PanelState {
  // slider set comes from the service schema, never hard-coded
  const sliders: Record<string, number> = {};
  for (const d of descriptors) sliders[d.field] = d.default;
  return {
    descriptors,
    sliders,
    seed: 0,
    lastFeatures: null,
    activeJobId: null,
    abSelection: "target",
    matchedParams: null,
  };
}

export function setSlider(state: PanelState, field: string, value: number): PanelState {
  const descriptor = state.descriptors.find((d) => d.field === field);
  if (!descriptor) throw new Error(`unknown parameter field: ${field}`);
  const clamped = Math.min(descriptor.max, Math.max(descriptor.min, value));
  return { ...state, sliders: { ...state.sliders, [field]: clamped } };
}

export function setSeed(state: PanelState, seed: number): PanelState {
  if (!Number.isInteger(seed) || seed < 0) throw new Error(`seed must be a non-negative integer`);
  return { ...state, seed };
}

export function randomizeSeed(state: PanelState, random: () => number = Math.random): PanelState {
  return { ...state, seed: Math.floor(random() * 2 ** 32) };
}

/** Apply a finished match: sliders move to best_params all at once, never partially. */
export function applyMatchResult(state: PanelState, result: MatchResultPayload): PanelState {
  const sliders: Record<string, number> = {};
  for (const d of state.descriptors) {
    const value = result.best_params[d.field];
    if (value === undefined || !Number.isFinite(value)) {
      throw new Error(`match result is missing parameter ${d.field}; sliders unchanged`);
    }
    sliders[d.field] = Math.min(d.max, Math.max(d.min, value));
  }
  return { ...state, sliders, activeJobId: null, matchedParams: sliders, abSelection: "matched" };
}

export function clearJob(state: PanelState): PanelState {
  return { ...state, activeJobId: null };
}
