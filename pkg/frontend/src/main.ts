/** DOM wiring for the control panel. Pure logic lives in the sibling modules. */

import { ApiClient, type Features, type JobRecord } from "./api.js";
import { debounce } from "./debounce.js";
import { meterLevels } from "./meters.js";
import { pollJob } from "./polling.js";
import { exportPreset, importPreset } from "./presets.js";
import { SequenceGuard } from "./sequence.js";
import { computeSpectrogram } from "./spectrogram.js";
import {
  applyMatchResult,
  initialState,
  randomizeSeed,
  setSeed,
  setSlider,
  type PanelState,
} from "./state.js";
import { computePeaks } from "./waveform.js";
import { decodeWav, looksLikeWav } from "./wav.js";

const MAX_UPLOAD_BYTES = 10 * 1024 * 1024;
const DEBOUNCE_MS = 150;

const api = new ApiClient("");
const renderGuard = new SequenceGuard();
let state: PanelState;
let audioCtx: AudioContext | null = null;
let lastRenderWav: ArrayBuffer | null = null;
let uploadedTargetWav: ArrayBuffer | null = null;
let matchCancelled = false;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function showBanner(text: string | null): void {
  const banner = $("banner");
  banner.textContent = text ?? "";
  banner.style.display = text ? "block" : "none";
}

function playWav(bytes: ArrayBuffer): void {
  try {
    const decoded = decodeWav(bytes);
    audioCtx = audioCtx ?? new AudioContext();
    const buffer = audioCtx.createBuffer(1, decoded.samples.length, decoded.sampleRate);
    buffer.copyToChannel(new Float32Array(decoded.samples), 0);
    const source = audioCtx.createBufferSource();
    source.buffer = buffer;
    source.connect(audioCtx.destination);
    source.start();
  } catch (err) {
    console.warn("playback failed:", err);
  }
}

function drawWaveform(bytes: ArrayBuffer): void {
  const canvas = $<HTMLCanvasElement>("waveform");
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const { samples } = decodeWav(bytes);
  const peaks = computePeaks(samples, canvas.width);
  const mid = canvas.height / 2;
  ctx.fillStyle = "#3fa7d6";
  for (let x = 0; x < canvas.width; x++) {
    const top = mid - peaks.maxs[x] * mid;
    const bottom = mid - peaks.mins[x] * mid;
    ctx.fillRect(x, top, 1, Math.max(1, bottom - top));
  }
}

function drawSpectrogram(bytes: ArrayBuffer): void {
  const canvas = $<HTMLCanvasElement>("spectrogram");
  const ctx = canvas.getContext("2d")!;
  ctx.fillStyle = "#10131a";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const { samples } = decodeWav(bytes);
  const image = computeSpectrogram(samples);
  if (image.rows.length === 0) return;
  const colW = canvas.width / image.rows.length;
  const maxBin = Math.floor(image.bins * 0.75); // display up to ~9 kHz
  const rowH = canvas.height / maxBin;
  for (let f = 0; f < image.rows.length; f++) {
    const row = image.rows[f];
    for (let k = 0; k < maxBin; k++) {
      const v = row[k];
      if (v <= 0) continue;
      ctx.fillStyle = `rgba(${Math.round(40 + 215 * v)}, ${Math.round(90 + 120 * v)}, ${Math.round(
        140 + 60 * v,
      )}, ${0.25 + 0.75 * v})`;
      ctx.fillRect(f * colW, canvas.height - (k + 1) * rowH, Math.ceil(colW), Math.ceil(rowH));
    }
  }
}

function updateMeters(features: Features): void {
  const levels = meterLevels(features);
  for (const [name, value] of Object.entries(levels)) {
    $(`meter-${name}`).style.width = `${Math.round(value * 100)}%`;
    $(`meter-${name}-value`).textContent =
      name === "brightness" ? `${features.brightness.toFixed(0)} Hz` : (features as unknown as Record<string, number>)[name].toFixed(3);
  }
}

async function renderNow(): Promise<void> {
  const ticket = renderGuard.next();
  const request = { params: { ...state.sliders }, seed: state.seed };
  try {
    const [wav, features] = await Promise.all([api.render(request), api.featuresOf(request)]);
    if (!renderGuard.accept(ticket)) return; // stale
    lastRenderWav = wav;
    state = { ...state, lastFeatures: features };
    showBanner(null);
    playWav(wav);
    drawWaveform(wav);
    drawSpectrogram(wav);
    updateMeters(features);
  } catch {
    showBanner("service unreachable or rejected the request; adjust and retry");
  }
}

const renderDebounced = debounce(() => void renderNow(), DEBOUNCE_MS);

function buildSliders(): void {
  const host = $("sliders");
  host.innerHTML = "";
  for (const d of state.descriptors) {
    const row = document.createElement("div");
    row.className = "slider-row";
    const label = document.createElement("label");
    label.textContent = d.name;
    label.htmlFor = `slider-${d.field}`;
    const input = document.createElement("input");
    input.type = "range";
    input.id = `slider-${d.field}`;
    input.min = String(d.min);
    input.max = String(d.max);
    input.step = "0.01";
    input.value = String(state.sliders[d.field]);
    const value = document.createElement("span");
    value.id = `value-${d.field}`;
    value.textContent = state.sliders[d.field].toFixed(2);
    input.addEventListener("input", () => {
      state = setSlider(state, d.field, Number(input.value));
      value.textContent = state.sliders[d.field].toFixed(2);
      renderDebounced();
    });
    row.append(label, input, value);
    host.append(row);
  }
}

function syncSlidersFromState(): void {
  for (const d of state.descriptors) {
    $<HTMLInputElement>(`slider-${d.field}`).value = String(state.sliders[d.field]);
    $(`value-${d.field}`).textContent = state.sliders[d.field].toFixed(2);
  }
  $<HTMLInputElement>("seed").value = String(state.seed);
}

function drawTrace(trace: number[]): void {
  const canvas = $<HTMLCanvasElement>("trace");
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (trace.length < 2) return;
  const max = Math.max(...trace);
  const min = Math.min(...trace);
  const span = max - min || 1;
  ctx.strokeStyle = "#e3655b";
  ctx.beginPath();
  trace.forEach((value, i) => {
    const x = (i / (trace.length - 1)) * canvas.width;
    const y = canvas.height - ((value - min) / span) * (canvas.height - 4) - 2;
    i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
  });
  ctx.stroke();
}

async function startMatchWorkflow(file: File): Promise<void> {
  const status = $("match-status");
  if (file.size > MAX_UPLOAD_BYTES) {
    status.textContent = "file exceeds 10 MiB";
    return;
  }
  const bytes = await file.arrayBuffer();
  if (!looksLikeWav(bytes)) {
    status.textContent = "not a WAV file (client-side check)";
    return;
  }
  uploadedTargetWav = bytes;
  matchCancelled = false;
  $<HTMLButtonElement>("cancel-match").disabled = false;
  status.textContent = "uploading...";
  try {
    const jobId = await api.startMatch(new Blob([bytes], { type: "audio/wav" }));
    state = { ...state, activeJobId: jobId };
    const record = await pollJob(api, jobId, {
      intervalMs: 400,
      onProgress: (r: JobRecord) => {
        status.textContent = `matching: ${(r.progress * 100).toFixed(0)}%`;
        if (r.result?.trace) drawTrace(r.result.trace);
      },
      isCancelled: () => matchCancelled,
    });
    const result = record.result!;
    state = applyMatchResult(state, result);
    syncSlidersFromState();
    drawTrace(result.trace);
    status.textContent = `matched: loss ${result.best_loss.toFixed(3)} in ${result.evaluations} evaluations`;
    $<HTMLButtonElement>("ab-toggle").disabled = false;
    await renderNow();
  } catch (err) {
    // cancellation or failure leaves the sliders untouched
    state = { ...state, activeJobId: null };
    status.textContent = `match ${matchCancelled ? "cancelled" : `failed: ${(err as Error).message}`}`;
  } finally {
    $<HTMLButtonElement>("cancel-match").disabled = true;
  }
}

function wireControls(): void {
  $<HTMLInputElement>("seed").addEventListener("change", (ev) => {
    state = setSeed(state, Number((ev.target as HTMLInputElement).value));
    renderDebounced();
  });
  $("randomize-seed").addEventListener("click", () => {
    state = randomizeSeed(state);
    syncSlidersFromState();
    renderDebounced();
  });
  $("export-preset").addEventListener("click", () => {
    $<HTMLTextAreaElement>("preset-text").value = exportPreset(state.sliders, state.seed);
  });
  $("import-preset").addEventListener("click", () => {
    try {
      const preset = importPreset(
        $<HTMLTextAreaElement>("preset-text").value,
        state.descriptors.map((d) => d.field),
      );
      state = { ...state, sliders: preset.params, seed: preset.seed };
      syncSlidersFromState();
      renderDebounced();
    } catch (err) {
      showBanner((err as Error).message);
    }
  });
  $<HTMLInputElement>("upload").addEventListener("change", (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (file) void startMatchWorkflow(file);
  });
  $("cancel-match").addEventListener("click", () => {
    matchCancelled = true;
  });
  $("ab-toggle").addEventListener("click", () => {
    state = { ...state, abSelection: state.abSelection === "target" ? "matched" : "target" };
    $("ab-toggle").textContent = `playing: ${state.abSelection}`;
    const bytes = state.abSelection === "target" ? uploadedTargetWav : lastRenderWav;
    if (bytes) {
      playWav(bytes);
      drawWaveform(bytes);
      drawSpectrogram(bytes);
    }
  });
  $("play").addEventListener("click", () => {
    if (lastRenderWav) playWav(lastRenderWav);
  });
}

async function boot(): Promise<void> {
  if (!(await api.health())) {
    showBanner("service unreachable; start it with: pyrosynth serve");
  }
  const descriptors = await api.schema();
  state = initialState(descriptors);
  buildSliders();
  $<HTMLInputElement>("seed").value = String(state.seed);
  wireControls();
  await renderNow();
}

void boot();
