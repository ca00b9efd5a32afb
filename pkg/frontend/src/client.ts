import type {
  AlgorithmDoc,
  CompileResponse,
  ErrorDetail,
  GraphDoc,
  HistoryEvent,
  LatticeDoc,
  LcResponse,
  MeasureResponse,
  Metrics,
  MinimizeResponse,
  RotationSite,
  SessionState,
  SubmissionResult,
  ThetaBindingDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: ErrorDetail,
  ) {
    super(detail.message || `request failed with status ${status}`);
    this.name = "ApiError";
  }
}

function asDetail(payload: unknown, status: number): ErrorDetail {
  const detail = (payload as { detail?: unknown } | null)?.detail;
  if (Array.isArray(detail)) {
    // FastAPI request validation errors arrive as a list of items.
    const first = detail[0] as { msg?: string } | undefined;
    return { kind: "validation", message: String(first?.msg ?? "invalid request") };
  }
  if (detail && typeof detail === "object") {
    return detail as ErrorDetail;
  }
  return { kind: "http", message: `request failed with status ${status}` };
}

export interface MeasureArgs {
  vertex: number;
  axis: "x" | "y" | "z";
  sign?: "+" | "-";
  b0?: number;
}

export interface SubmitArgs {
  qasm: string;
  endpoint?: string;
  json_wrap?: boolean;
}

/** Fetch wrapper over the session REST API. */
export class ForgeClient {
  constructor(readonly baseUrl: string = "http://localhost:8000") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await fetch(`${this.baseUrl}${path}`, init);
    if (!res.ok) {
      const payload = await res.json().catch(() => null);
      throw new ApiError(res.status, asDetail(payload, res.status));
    }
    return res.json() as Promise<T>;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  createSession(algorithm?: AlgorithmDoc): Promise<SessionState> {
    return this.request("POST", "/sessions", algorithm ? { algorithm } : {});
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  replaceGrid(id: string, algorithm: AlgorithmDoc): Promise<SessionState> {
    return this.request("PUT", `/sessions/${id}/grid`, { algorithm });
  }

  metrics(id: string): Promise<Metrics> {
    return this.request("GET", `/sessions/${id}/metrics`);
  }

  layout(id: string): Promise<LatticeDoc> {
    return this.request("POST", `/sessions/${id}/layout`);
  }

  prepare(id: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/prepare`);
  }

  reset(id: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/reset`);
  }

  measure(id: string, args: MeasureArgs): Promise<MeasureResponse> {
    return this.request("POST", `/sessions/${id}/measure`, args);
  }

  localComplement(id: string, vertex: number): Promise<LcResponse> {
    return this.request("POST", `/sessions/${id}/lc`, { vertex });
  }

  minimizeCz(id: string, nodeBudget?: number): Promise<MinimizeResponse> {
    const body = nodeBudget === undefined ? {} : { node_budget: nodeBudget };
    return this.request("POST", `/sessions/${id}/minimize-cz`, body);
  }

  graph(id: string): Promise<GraphDoc> {
    return this.request("GET", `/sessions/${id}/graph`);
  }

  rotations(id: string): Promise<RotationSite[]> {
    return this.request("GET", `/sessions/${id}/rotations`);
  }

  compile(id: string, bindings: ThetaBindingDoc[]): Promise<CompileResponse> {
    return this.request("POST", `/sessions/${id}/compile`, { bindings });
  }

  submit(id: string, args: SubmitArgs): Promise<SubmissionResult> {
    return this.request("POST", `/sessions/${id}/submit`, args);
  }

  history(id: string): Promise<HistoryEvent[]> {
    return this.request("GET", `/sessions/${id}/history`);
  }

  save(id: string, path?: string): Promise<Record<string, unknown>> {
    return this.request("POST", `/sessions/${id}/save`, path ? { path } : {});
  }
}
