/** Parameter presets as a portable text blob (JSON). */

export interface Preset {
  params: Record<string, number>;
  seed: number;
}

export function exportPreset(params: Record<string, number>, seed: number): string {
  return JSON.stringify({ params, seed }, null, 2);
}

export function importPreset(text: string, expectedFields: string[]): Preset {
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch {
    throw new Error("preset is not valid JSON");
  }
  if (typeof parsed !== "object" || parsed === null) throw new Error("preset must be an object");
  const obj = parsed as { params?: unknown; seed?: unknown };
  if (typeof obj.seed !== "number" || !Number.isInteger(obj.seed) || obj.seed < 0) {
    throw new Error("preset seed must be a non-negative integer");
  }
  if (typeof obj.params !== "object" || obj.params === null) {
    throw new Error("preset params must be an object");
  }
  const params = obj.params as Record<string, unknown>;
  const out: Record<string, number> = {};
  for (const field of expectedFields) {
    const value = params[field];
    if (typeof value !== "number" || !(value >= 0 && value <= 1)) {
      throw new Error(`preset parameter ${field} must be a number in [0, 1]`);
    }
    out[field] = value;
  }
  return { params: out, seed: obj.seed };
}
