/** Typed client for the session service. All program results come from here;
 *  the playground itself never evaluates anything. */

export type PickSide = "left" | "right";

export interface PendingChoice {
  pointId: number;
  objectName: string;
  className: string;
  leftText: string;
  rightText: string;
}

export type SessionStatus = "awaiting_choice" | "finished" | "failed";

export interface SessionView {
  sessionId: string;
  status: SessionStatus;
  output: string[];
  pendingChoice?: PendingChoice;
  finalFields?: Record<string, Record<string, unknown>>;
  error?: string;
}

export interface ParseErrorBody {
  parseError: string;
  line: number;
  col: number;
}

export interface WireOutcome {
  choices: string;
  status: "finished" | "failed";
  output: string[];
  finalFields: Record<string, Record<string, unknown>>;
  error?: string;
}

export interface EnumerationBody {
  outcomes: WireOutcome[];
  truncated: boolean;
}

/** Expected non-2xx answers are values, not exceptions; only transport
 *  problems throw. */
export type SessionResult =
  | { kind: "session"; view: SessionView }
  | { kind: "parseError"; detail: ParseErrorBody }
  | { kind: "protocolError"; status: number; error: string };

export type EnumerateResult =
  | { kind: "enumeration"; body: EnumerationBody }
  | { kind: "parseError"; detail: ParseErrorBody }
  | { kind: "protocolError"; status: number; error: string };

export interface Api {
  createSession(source: string): Promise<SessionResult>;
  getSession(sessionId: string): Promise<SessionResult>;
  submitChoice(sessionId: string, pointId: number, pick: PickSide): Promise<SessionResult>;
  deleteSession(sessionId: string): Promise<void>;
  enumerate(source: string, maxOutcomes?: number): Promise<EnumerateResult>;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export function makeApi(base = "", fetchFn?: FetchLike): Api {
  const doFetch: FetchLike = fetchFn ?? ((url, init) => fetch(url, init));

  async function request(path: string, init?: RequestInit): Promise<Response> {
    return doFetch(base + path, init);
  }

  async function asSessionResult(resp: Response): Promise<SessionResult> {
    const body = await resp.json();
    if (resp.ok) return { kind: "session", view: body as SessionView };
    if (resp.status === 422 && "parseError" in body) {
      return { kind: "parseError", detail: body as ParseErrorBody };
    }
    return {
      kind: "protocolError",
      status: resp.status,
      error: typeof body.error === "string" ? body.error : `http ${resp.status}`,
    };
  }

  const json = (payload: unknown): RequestInit => ({
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });

  return {
    async createSession(source) {
      return asSessionResult(await request("/api/sessions", json({ source })));
    },

    async getSession(sessionId) {
      return asSessionResult(await request(`/api/sessions/${sessionId}`));
    },

    async submitChoice(sessionId, pointId, pick) {
      return asSessionResult(
        await request(`/api/sessions/${sessionId}/choice`, json({ pointId, pick })),
      );
    },

    async deleteSession(sessionId) {
      await request(`/api/sessions/${sessionId}`, { method: "DELETE" });
    },

    async enumerate(source, maxOutcomes) {
      const payload =
        maxOutcomes === undefined ? { source } : { source, maxOutcomes };
      const resp = await request("/api/enumerate", json(payload));
      const body = await resp.json();
      if (resp.ok) return { kind: "enumeration", body: body as EnumerationBody };
      if (resp.status === 422 && "parseError" in body) {
        return { kind: "parseError", detail: body as ParseErrorBody };
      }
      return {
        kind: "protocolError",
        status: resp.status,
        error: typeof body.error === "string" ? body.error : `http ${resp.status}`,
      };
    },
  };
}
