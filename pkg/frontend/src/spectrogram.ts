/** Log-magnitude STFT matrix for canvas rendering. */

import { rfftMagnitudes } from "./fft.js";

export interface SpectrogramImage {
  /** frames x bins, values normalized to [0, 1] */
  rows: Float64Array[];
  bins: number;
}

export function computeSpectrogram(
  samples: Float32Array,
  fftSize = 1024,
  hop = 512,
  floorDb = -80,
): SpectrogramImage {
  if (samples.length < fftSize) {
    return { rows: [], bins: fftSize / 2 + 1 };
  }
  const window = new Float64Array(fftSize);
  for (let i = 0; i < fftSize; i++) {
    window[i] = 0.5 - 0.5 * Math.cos((2 * Math.PI * i) / fftSize);
  }
  const frames = Math.floor((samples.length - fftSize) / hop) + 1;
  const rows: Float64Array[] = [];
  let peak = 1e-12;
  for (let f = 0; f < frames; f++) {
    const frame = new Float64Array(fftSize);
    for (let i = 0; i < fftSize; i++) frame[i] = samples[f * hop + i] * window[i];
    const mags = rfftMagnitudes(frame);
    for (let k = 0; k < mags.length; k++) peak = Math.max(peak, mags[k]);
    rows.push(mags);
  }
  // to dB relative to the clip peak, clipped at floorDb, mapped to [0, 1]
  for (const row of rows) {
    for (let k = 0; k < row.length; k++) {
      const db = 20 * Math.log10(Math.max(row[k], 1e-12) / peak);
      row[k] = Math.min(1, Math.max(0, (db - floorDb) / -floorDb));
    }
  }
  return { rows, bins: fftSize / 2 + 1 };
}
