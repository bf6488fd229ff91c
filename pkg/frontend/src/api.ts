import {
  ApiError,
  CreateRequest,
  CreateResponse,
  LtsView,
  StateView,
} from "./types.js";

type Fetch = typeof fetch;

/** Thin typed client over the session endpoints.  The fetch function is
 * injectable so tests can point it at a local server or a recording. */
export class SessionApi {
  constructor(
    private base: string = "",
    private fetchFn: Fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.base + path, init);
    if (res.status === 204) {
      return undefined as T;
    }
    const body = await res.json().catch(() => ({}));
    if (!res.ok) {
      const message =
        typeof body === "object" && body !== null && "error" in body
          ? String((body as { error: unknown }).error)
          : res.statusText;
      throw new ApiError(res.status, message);
    }
    return body as T;
  }

  createSession(req: CreateRequest): Promise<CreateResponse> {
    return this.request("/api/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  getState(id: string): Promise<StateView> {
    return this.request(`/api/session/${id}`);
  }

  move(id: string, moveIndex: number): Promise<StateView> {
    return this.request(`/api/session/${id}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ move_index: moveIndex }),
    });
  }

  autoMove(id: string): Promise<StateView> {
    return this.request(`/api/session/${id}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ auto: true }),
    });
  }

  getLts(id: string): Promise<LtsView> {
    return this.request(`/api/session/${id}/lts`);
  }

  deleteSession(id: string): Promise<void> {
    return this.request(`/api/session/${id}`, { method: "DELETE" });
  }
}
