/** Typed client for the synthesis service HTTP API. */

export interface ParamDescriptor {
  name: string;
  field: string;
  min: number;
  max: number;
  default: number;
}

export interface RenderRequest {
  params: Record<string, number>;
  seed: number;
  duration_s?: number;
  sample_rate_hz?: number;
}

export interface Features {
  boominess: number;
  brightness: number;
  roughness: number;
  depth: number;
}

export interface MatchResultPayload {
  best_params: Record<string, number>;
  best_loss: number;
  evaluations: number;
  trace: number[];
}

export interface JobRecord {
  id: string;
  kind: string;
  state: "queued" | "running" | "done" | "failed";
  progress: number;
  result: MatchResultPayload | null;
  error: string | null;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function checkOk(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && body.detail) detail = JSON.stringify(body.detail);
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, detail);
  }
  return response;
}

export class ApiClient {
  constructor(private baseUrl: string = "", private fetchFn: typeof fetch = fetch) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async schema(): Promise<ParamDescriptor[]> {
    const r = await checkOk(await this.fetchFn(this.url("/schema")));
    return r.json();
  }

  async health(): Promise<boolean> {
    try {
      const r = await this.fetchFn(this.url("/health"));
      return r.ok;
    } catch {
      return false;
    }
  }

  async render(request: RenderRequest): Promise<ArrayBuffer> {
    const r = await checkOk(
      await this.fetchFn(this.url("/render"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
    return r.arrayBuffer();
  }

  async featuresOf(request: RenderRequest): Promise<Features> {
    const r = await checkOk(
      await this.fetchFn(this.url("/features"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
    return r.json();
  }

  async startMatch(wav: Blob, overrides: Record<string, number> = {}): Promise<string> {
    const form = new FormData();
    form.append("target", wav, "target.wav");
    for (const [key, value] of Object.entries(overrides)) {
      form.append(key, String(value));
    }
    const r = await checkOk(
      await this.fetchFn(this.url("/match"), { method: "POST", body: form }),
    );
    const body = await r.json();
    return body.job_id;
  }

  async job(id: string): Promise<JobRecord> {
    const r = await checkOk(await this.fetchFn(this.url(`/jobs/${id}`)));
    return r.json();
  }

  async cancelJob(id: string): Promise<void> {
    await checkOk(await this.fetchFn(this.url(`/jobs/${id}`), { method: "DELETE" }));
  }
}
