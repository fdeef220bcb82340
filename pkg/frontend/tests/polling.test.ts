import { describe, expect, it, vi } from "vitest";

import type { ApiClient, JobRecord } from "../src/api.js";
import { pollJob } from "../src/polling.js";

function fakeClient(records: JobRecord[], onCancel?: () => void): ApiClient {
  let i = 0;
  return {
    job: async () => records[Math.min(i++, records.length - 1)],
    cancelJob: async () => onCancel?.(),
  } as unknown as ApiClient;
}

const record = (state: JobRecord["state"], progress: number, extra: Partial<JobRecord> = {}): JobRecord => ({
  id: "j1",
  kind: "match",
  state,
  progress,
  result: null,
  error: null,
  ...extra,
});

describe("pollJob", () => {
  it("resolves when the job completes and reports progress", async () => {
    const seen: number[] = [];
    const done = record("done", 1, { result: { best_params: {}, best_loss: 1, evaluations: 10, trace: [2, 1] } });
    const client = fakeClient([record("queued", 0), record("running", 0.5), done]);
    const result = await pollJob(client, "j1", {
      intervalMs: 1,
      onProgress: (r) => seen.push(r.progress),
    });
    expect(result.state).toBe("done");
    expect(seen).toEqual([0, 0.5, 1]);
  });

  it("throws with the server error on failure", async () => {
    const client = fakeClient([record("running", 0.2), record("failed", 0.2, { error: "boom" })]);
    await expect(pollJob(client, "j1", { intervalMs: 1 })).rejects.toThrow("boom");
  });

  it("cancels cooperatively", async () => {
    const cancelled = vi.fn();
    const client = fakeClient([record("running", 0.1)], cancelled);
    await expect(
      pollJob(client, "j1", { intervalMs: 1, isCancelled: () => true }),
    ).rejects.toThrow(/cancelled/);
    expect(cancelled).toHaveBeenCalled();
  });

  it("times out", async () => {
    const client = fakeClient([record("running", 0.1)]);
    await expect(pollJob(client, "j1", { intervalMs: 1, timeoutMs: 5 })).rejects.toThrow(/timed out/);
  });
});
