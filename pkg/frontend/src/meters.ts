/** Map raw feature values onto 0..1 meter positions. */

import type { Features } from "./api.js";

// display scaling: boominess/depth are already fractions; brightness and
// roughness get fixed perceptual ranges so meter motion is comparable
export const BRIGHTNESS_METER_MAX_HZ = 6000;
export const ROUGHNESS_METER_MAX = 1.0;

export interface MeterLevels {
  boominess: number;
  brightness: number;
  roughness: number;
  depth: number;
}

const clamp01 = (x: number) => Math.min(1, Math.max(0, x));

export function meterLevels(features: Features): MeterLevels {
  return {
    boominess: clamp01(features.boominess),
    brightness: clamp01(features.brightness / BRIGHTNESS_METER_MAX_HZ),
    roughness: clamp01(features.roughness / ROUGHNESS_METER_MAX),
    depth: clamp01(features.depth),
  };
}
