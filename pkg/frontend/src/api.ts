import type {
  ActionResponse,
  BestMove,
  Evaluation,
  Role,
  SessionResponse,
  SessionState,
} from "./model.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function detailText(body: unknown): string {
  if (typeof body === "object" && body !== null && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    if (typeof detail === "string") return detail;
    if (Array.isArray(detail)) {
      return detail
        .map((item) => (typeof item?.msg === "string" ? item.msg : JSON.stringify(item)))
        .join("; ");
    }
  }
  return "request failed";
}

export class Client {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly base: string = "",
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<string> {
    const response = await this.fetchImpl(this.base + path, init);
    const raw = await response.text();
    if (!response.ok) {
      let body: unknown = null;
      try {
        body = JSON.parse(raw);
      } catch {
        // non-JSON error body; fall through to the generic message
      }
      throw new ApiError(response.status, detailText(body));
    }
    return raw;
  }

  private post(path: string, body: unknown): Promise<string> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  // The raw body is kept alongside the parsed object so the what-if panel
  // can be checked byte for byte against what the server actually sent.
  async evaluate(position: string): Promise<{ evaluation: Evaluation; raw: string }> {
    const raw = await this.post("/evaluate", { position });
    return { evaluation: JSON.parse(raw) as Evaluation, raw };
  }

  async bestMove(position: string): Promise<BestMove> {
    return JSON.parse(await this.post("/best-move", { position })) as BestMove;
  }

  async createSession(position: string, advantage: number, humanRole: Role): Promise<SessionResponse> {
    const raw = await this.post("/sessions", {
      position,
      advantage,
      human_role: humanRole,
    });
    return JSON.parse(raw) as SessionResponse;
  }

  async getSession(id: number): Promise<SessionState> {
    const raw = await this.request(`/sessions/${id}`);
    return (JSON.parse(raw) as { state: SessionState }).state;
  }

  async act(
    id: number,
    action: { type: "open" | "keep" | "give_up"; component?: string },
    version?: number,
  ): Promise<ActionResponse> {
    const raw = await this.post(`/sessions/${id}/actions`, {
      action,
      ...(version === undefined ? {} : { version }),
    });
    return JSON.parse(raw) as ActionResponse;
  }
}
