/** Per-pixel min/max peak pairs for waveform drawing. */

export interface WaveformPeaks {
  mins: Float32Array;
  maxs: Float32Array;
}

export function computePeaks(samples: Float32Array, columns: number): WaveformPeaks {
  const mins = new Float32Array(columns);
  const maxs = new Float32Array(columns);
  if (samples.length === 0 || columns === 0) return { mins, maxs };
  const perColumn = samples.length / columns;
  for (let c = 0; c < columns; c++) {
    const start = Math.floor(c * perColumn);
    const end = Math.max(start + 1, Math.floor((c + 1) * perColumn));
    let lo = Infinity;
    let hi = -Infinity;
    for (let i = start; i < end && i < samples.length; i++) {
      if (samples[i] < lo) lo = samples[i];
      if (samples[i] > hi) hi = samples[i];
    }
    mins[c] = lo === Infinity ? 0 : lo;
    maxs[c] = hi === -Infinity ? 0 : hi;
  }
  return { mins, maxs };
}
