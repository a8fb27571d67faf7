import type {
  PresetInfo,
  SessionState,
  ServiceError,
  StaircasePayload,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly kind: string,
  ) {
    super(message);
  }
}

export class Client {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`, 0, "network");
    }
    const body = await resp.json();
    if (!resp.ok) {
      const e = body as ServiceError;
      throw new ApiError(e.error ?? resp.statusText, resp.status, e.kind ?? "error");
    }
    return body as T;
  }

  presets(): Promise<PresetInfo[]> {
    return this.request("/presets");
  }

  createSession(preset: string): Promise<SessionState> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ preset }),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  mutate(id: string, vertex: number, order: number): Promise<SessionState> {
    return this.request(`/sessions/${id}/mutate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ vertex, order }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}/undo`, { method: "POST" });
  }

  staircase(id: string): Promise<StaircasePayload> {
    return this.request(`/sessions/${id}/staircase`);
  }
}
