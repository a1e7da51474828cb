/** Typed client for the exploration service.
 *
 * Every method mirrors one endpoint and returns the response body as-is.
 * Nothing in here interprets problem structure; renderings, diagrams and
 * verdicts travel through untouched so the page can show them verbatim.
 */

export interface ProblemPayload {
  handle: string;
  labels: string[];
  delta: number;
  rank: number;
  render: string;
  provenance?: Record<string, string[][]>;
}

export interface HalfStepPayload {
  handle: string;
  applied: string;
  sigma: string[][];
  node: string[][][];
  edge: string[][][];
}

export interface DiagramPayload {
  handle: string;
  side: "node" | "edge";
  classes: string[][];
  edges: [string[], string[]][];
}

export interface ZeroRoundPayload {
  handle: string;
  solvable: boolean;
  witness: string[] | null;
}

export interface HistoryPayload {
  handle: string;
  origins: Record<string, unknown>[];
}

export interface FixedPointVerdict {
  ok: boolean;
  map: Record<string, string> | null;
  problem: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
    readonly size?: number,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  if (res.ok) {
    return (await res.json()) as T;
  }
  let detail = res.statusText;
  let size: number | undefined;
  try {
    const body = await res.json();
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail !== undefined) detail = JSON.stringify(body.detail);
    if (typeof body.size === "number") size = body.size;
  } catch {
    /* non-JSON error body; keep the status text */
  }
  throw new ApiError(res.status, detail, size);
}

export class Client {
  constructor(readonly base: string) {}

  private url(path: string, query?: Record<string, string | number | undefined>): string {
    const u = new URL(path, this.base);
    if (query) {
      for (const [k, v] of Object.entries(query)) {
        if (v !== undefined) u.searchParams.set(k, String(v));
      }
    }
    return u.toString();
  }

  private get<T>(path: string, query?: Record<string, string | number | undefined>): Promise<T> {
    return fetch(this.url(path, query)).then((res) => unwrap<T>(res));
  }

  private post<T>(
    path: string,
    body?: unknown,
    query?: Record<string, string | number | undefined>,
  ): Promise<T> {
    return fetch(this.url(path, query), {
      method: "POST",
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? null : JSON.stringify(body),
    }).then((res) => unwrap<T>(res));
  }

  postProblem(text: string, cap?: number): Promise<ProblemPayload> {
    return this.post("/problems", { text, cap: cap ?? null });
  }

  getProblem(handle: string, condensed = false): Promise<ProblemPayload> {
    return this.get(`/problems/${handle}`, condensed ? { condensed: "true" } : undefined);
  }

  step(handle: string, cap?: number): Promise<ProblemPayload> {
    return this.post(`/problems/${handle}/step`, undefined, { cap });
  }

  halfStep(handle: string, cap?: number): Promise<HalfStepPayload> {
    return this.post(`/problems/${handle}/re`, undefined, { cap });
  }

  diagram(handle: string, side: "node" | "edge"): Promise<DiagramPayload> {
    return this.get(`/problems/${handle}/diagram`, { side });
  }

  merge(handle: string, groups: string[][]): Promise<ProblemPayload> {
    return this.post(`/problems/${handle}/merge`, { groups });
  }

  rename(handle: string, map: Record<string, string>): Promise<ProblemPayload> {
    return this.post(`/problems/${handle}/rename`, { map });
  }

  zeroRound(handle: string): Promise<ZeroRoundPayload> {
    return this.get(`/problems/${handle}/zeroround`);
  }

  history(handle: string): Promise<HistoryPayload> {
    return this.get(`/problems/${handle}/history`);
  }

  verifyFixedPoint(delta: number, rank: number, cap?: number): Promise<FixedPointVerdict> {
    return this.post("/verify/fixedpoint", { delta, rank, cap: cap ?? null });
  }
}
