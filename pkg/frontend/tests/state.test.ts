import { describe, expect, it } from "vitest";

import type { MatchResultPayload, ParamDescriptor } from "../src/api.js";
import {
  applyMatchResult,
  initialState,
  randomizeSeed,
  setSeed,
  setSlider,
} from "../src/state.js";

const descriptors: ParamDescriptor[] = [
  { name: "Rumble", field: "rumble", min: 0, max: 1, default: 0.5 },
  { name: "Air", field: "air", min: 0, max: 1, default: 0.5 },
  { name: "Dust", field: "dust", min: 0, max: 1, default: 0.5 },
];

describe("initialState", () => {
  it("derives the slider set from the schema, not a hard-coded list", () => {
    const state = initialState(descriptors);
    expect(Object.keys(state.sliders)).toEqual(["rumble", "air", "dust"]);
    expect(state.sliders.rumble).toBe(0.5);
    const extended = initialState([
      ...descriptors,
      { name: "Extra", field: "extra", min: 0, max: 1, default: 0.1 },
    ]);
    expect(extended.sliders.extra).toBe(0.1);
  });
});

describe("setSlider", () => {
  it("clamps to the descriptor range", () => {
    let state = initialState(descriptors);
    state = setSlider(state, "rumble", 1.7);
    expect(state.sliders.rumble).toBe(1);
    state = setSlider(state, "rumble", -0.2);
    expect(state.sliders.rumble).toBe(0);
  });

  it("rejects unknown fields", () => {
    expect(() => setSlider(initialState(descriptors), "nope", 0.5)).toThrow(/unknown/);
  });

  it("does not mutate the previous state", () => {
    const before = initialState(descriptors);
    setSlider(before, "air", 0.9);
    expect(before.sliders.air).toBe(0.5);
  });
});

describe("seed handling", () => {
  it("accepts non-negative integers only", () => {
    const state = initialState(descriptors);
    expect(setSeed(state, 42).seed).toBe(42);
    expect(() => setSeed(state, -1)).toThrow();
    expect(() => setSeed(state, 1.5)).toThrow();
  });

  it("randomize produces an integer in range", () => {
    const state = randomizeSeed(initialState(descriptors), () => 0.9999);
    expect(Number.isInteger(state.seed)).toBe(true);
    expect(state.seed).toBeGreaterThanOrEqual(0);
    expect(state.seed).toBeLessThan(2 ** 32);
  });
});

describe("applyMatchResult", () => {
  const result: MatchResultPayload = {
    best_params: { rumble: 0.8, air: 0.1, dust: 0.3 },
    best_loss: 1.2,
    evaluations: 100,
    trace: [5, 3, 1.2],
  };

  it("moves all sliders and enables the matched A/B side", () => {
    const state = applyMatchResult(initialState(descriptors), result);
    expect(state.sliders).toEqual({ rumble: 0.8, air: 0.1, dust: 0.3 });
    expect(state.abSelection).toBe("matched");
    expect(state.activeJobId).toBeNull();
  });

  it("never applies partially when a parameter is missing", () => {
    const before = initialState(descriptors);
    const incomplete = { ...result, best_params: { rumble: 0.8 } };
    expect(() => applyMatchResult(before, incomplete)).toThrow(/missing parameter/);
    expect(before.sliders).toEqual({ rumble: 0.5, air: 0.5, dust: 0.5 });
  });
});
