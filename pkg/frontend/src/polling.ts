/** Poll a job until it reaches a terminal state. */

import type { ApiClient, JobRecord } from "./api.js";

export interface PollOptions {
  intervalMs?: number;
  timeoutMs?: number;
  onProgress?: (record: JobRecord) => void;
  isCancelled?: () => boolean;
}

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export async function pollJob(
  client: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<JobRecord> {
  const interval = options.intervalMs ?? 500;
  const deadline = Date.now() + (options.timeoutMs ?? 10 * 60 * 1000);
  for (;;) {
    if (options.isCancelled?.()) {
      await client.cancelJob(jobId).catch(() => undefined);
      throw new Error("cancelled");
    }
    const record = await client.job(jobId);
    options.onProgress?.(record);
    if (record.state === "done") return record;
    if (record.state === "failed") throw new Error(record.error ?? "job failed");
    if (Date.now() > deadline) throw new Error("job polling timed out");
    await sleep(interval);
  }
}
