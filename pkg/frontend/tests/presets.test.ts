import { describe, expect, it } from "vitest";

import { exportPreset, importPreset } from "../src/presets.js";

const fields = ["rumble", "air", "dust"];

describe("presets", () => {
  it("round-trips params and seed exactly", () => {
    const params = { rumble: 0.25, air: 0.75, dust: 1 };
    const text = exportPreset(params, 1234);
    const back = importPreset(text, fields);
    expect(back.params).toEqual(params);
    expect(back.seed).toBe(1234);
  });

  it("rejects invalid JSON", () => {
    expect(() => importPreset("{oops", fields)).toThrow(/JSON/);
  });

  it("rejects missing or out-of-range parameters", () => {
    expect(() => importPreset(JSON.stringify({ params: { rumble: 0.5 }, seed: 1 }), fields)).toThrow(
      /air/,
    );
    expect(() =>
      importPreset(JSON.stringify({ params: { rumble: 2, air: 0.5, dust: 0.5 }, seed: 1 }), fields),
    ).toThrow(/rumble/);
  });

  it("rejects bad seeds", () => {
    expect(() =>
      importPreset(JSON.stringify({ params: { rumble: 0, air: 0, dust: 0 }, seed: -3 }), fields),
    ).toThrow(/seed/);
  });
});
