/** Minimal RIFF/WAVE decoder for PCM16 and float32, mono or stereo. */

export interface DecodedWav {
  sampleRate: number;
  samples: Float32Array; // mono, [-1, 1]
}

export function looksLikeWav(bytes: ArrayBuffer): boolean {
  if (bytes.byteLength < 12) return false;
  const v = new DataView(bytes);
  return (
    v.getUint32(0, false) === 0x52494646 /* RIFF */ &&
    v.getUint32(8, false) === 0x57415645 /* WAVE */
  );
}

export function decodeWav(bytes: ArrayBuffer): DecodedWav {
  if (!looksLikeWav(bytes)) throw new Error("not a RIFF/WAVE file");
  const view = new DataView(bytes);
  let offset = 12;
  let format = 0;
  let channels = 0;
  let sampleRate = 0;
  let bitsPerSample = 0;
  let dataOffset = -1;
  let dataLength = 0;

  while (offset + 8 <= view.byteLength) {
    const chunkId = view.getUint32(offset, false);
    const chunkSize = view.getUint32(offset + 4, true);
    const body = offset + 8;
    if (chunkId === 0x666d7420 /* "fmt " */) {
      format = view.getUint16(body, true);
      channels = view.getUint16(body + 2, true);
      sampleRate = view.getUint32(body + 4, true);
      bitsPerSample = view.getUint16(body + 14, true);
    } else if (chunkId === 0x64617461 /* "data" */) {
      dataOffset = body;
      dataLength = Math.min(chunkSize, view.byteLength - body);
    }
    offset = body + chunkSize + (chunkSize % 2);
  }

  if (dataOffset < 0 || channels < 1) throw new Error("missing fmt or data chunk");
  if (channels > 2) throw new Error(`expected mono or stereo, got ${channels} channels`);

  let interleaved: Float32Array;
  if (format === 1 && bitsPerSample === 16) {
    const n = Math.floor(dataLength / 2);
    interleaved = new Float32Array(n);
    for (let i = 0; i < n; i++) {
      interleaved[i] = view.getInt16(dataOffset + 2 * i, true) / 32768;
    }
  } else if (format === 3 && bitsPerSample === 32) {
    const n = Math.floor(dataLength / 4);
    interleaved = new Float32Array(n);
    for (let i = 0; i < n; i++) {
      interleaved[i] = view.getFloat32(dataOffset + 4 * i, true);
    }
  } else {
    throw new Error(`unsupported encoding: format ${format}, ${bitsPerSample} bits`);
  }

  if (channels === 1) return { sampleRate, samples: interleaved };
  const frames = Math.floor(interleaved.length / 2);
  const mono = new Float32Array(frames);
  for (let i = 0; i < frames; i++) {
    mono[i] = (interleaved[2 * i] + interleaved[2 * i + 1]) / 2;
  }
  return { sampleRate, samples: mono };
}
