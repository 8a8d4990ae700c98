/** The playground round trip against the real server: run the default
 *  program, answer "employee = true", see 3000; enumerate, see two rows.
 *  Exercises the api client and the state machine end to end; only the DOM
 *  layer is substituted by asserting on the rendered HTML string. */

import { spawn, type ChildProcess } from "node:child_process";
import { existsSync } from "node:fs";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { makeApi } from "../src/api.js";
import { render } from "../src/render.js";
import {
  applyEnumeration,
  applyNewSession,
  applySessionUpdate,
  applyToast,
  initialState,
  pendingChoice,
  recordPick,
  type PlaygroundState,
} from "../src/state.js";
import { TEMPLEU_SOURCE } from "../src/templeu.js";

const PORT = 7700 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = new URL("../..", import.meta.url).pathname;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/sessions/warmup-probe`);
      if (resp.status === 404 || resp.status === 200) return;
    } catch {
      // not listening yet
    }
    await new Promise(r => setTimeout(r, 150));
  }
  throw new Error(`server did not come up on ${BASE}`);
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "javai", "serve", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  await waitForServer();
});

afterAll(() => {
  server.kill("SIGTERM");
});

describe("playground round trip", () => {
  const api = makeApi(BASE);

  it("run, answer employee = true, read 3000, then enumerate two rows", async () => {
    let s: PlaygroundState = initialState(TEMPLEU_SOURCE);

    const created = await api.createSession(s.source);
    expect(created.kind).toBe("session");
    if (created.kind !== "session") return;
    s = applyNewSession(s, created.view);

    expect(s.mode).toBe("awaiting_choice");
    const prompt = pendingChoice(s)!;
    expect(prompt.className).toBe("TempleU");
    expect(prompt.leftText).toBe("employee = true");
    expect(prompt.rightText).toBe("employee = false");

    s = recordPick(s, "left");
    const answered = await api.submitChoice(
      s.session!.sessionId, prompt.pointId, "left");
    expect(answered.kind).toBe("session");
    if (answered.kind !== "session") return;
    s = applySessionUpdate(s, answered.view);

    expect(s.mode).toBe("finished");
    expect(s.session!.output).toEqual(["3000"]);
    const page = render(s);
    expect(page).toContain("3000");
    expect(page).toContain("employee = true"); // the breadcrumb

    const listed = await api.enumerate(s.source);
    expect(listed.kind).toBe("enumeration");
    if (listed.kind !== "enumeration") return;
    s = applyEnumeration(s, listed.body);

    expect(s.outcomePanel!.outcomes.map(o => o.choices)).toEqual(["L", "R"]);
    expect(s.outcomePanel!.outcomes.map(o => o.output)).toEqual([["3000"], ["5000"]]);
    const table = render(s);
    expect(table.split('class="outcome"').length - 1).toBe(2);
  });

  it("answering right yields 5000", async () => {
    const created = await api.createSession(TEMPLEU_SOURCE);
    if (created.kind !== "session") throw new Error("expected a session");
    const view = created.view;
    const answered = await api.submitChoice(
      view.sessionId, view.pendingChoice!.pointId, "right");
    if (answered.kind !== "session") throw new Error("expected a session");
    expect(answered.view.status).toBe("finished");
    expect(answered.view.output).toEqual(["5000"]);
    expect(answered.view.finalFields).toEqual({
      "p#1": { tuition: 5000, employee: false },
    });
  });

  it("a raced second answer surfaces as a toast and a clean refresh", async () => {
    const created = await api.createSession(TEMPLEU_SOURCE);
    if (created.kind !== "session") throw new Error("expected a session");
    const { sessionId, pendingChoice: prompt } = created.view;
    await api.submitChoice(sessionId, prompt!.pointId, "left");
    const second = await api.submitChoice(sessionId, prompt!.pointId, "right");
    expect(second.kind).toBe("protocolError");
    if (second.kind !== "protocolError") return;
    expect(second.status).toBe(409);

    // what main.ts does on that result: toast, then resync from the server
    let s = applyNewSession(initialState(TEMPLEU_SOURCE), created.view);
    s = applyToast(s, `decision rejected: ${second.error}`);
    const refreshed = await api.getSession(sessionId);
    if (refreshed.kind !== "session") throw new Error("expected a session");
    s = applySessionUpdate(s, refreshed.view);
    expect(s.mode).toBe("finished");
    expect(s.session!.output).toEqual(["3000"]);
    expect(render(s)).toContain("decision rejected");
  });

  it("parse errors come back with their position", async () => {
    const result = await api.createSession("class TempleU {");
    expect(result.kind).toBe("parseError");
    if (result.kind !== "parseError") return;
    expect(result.detail.line).toBeGreaterThanOrEqual(1);
    expect(result.detail.col).toBeGreaterThanOrEqual(1);
  });

  it("serves the built playground shell when dist/ exists", async () => {
    const dist = new URL("../dist/index.html", import.meta.url).pathname;
    if (!existsSync(dist)) return; // build hasn't run; nothing to assert
    const resp = await fetch(`${BASE}/`);
    expect(resp.status).toBe(200);
    const page = await resp.text();
    expect(page).toContain('id="app"');
    expect(page).toContain("main.js");
  });
});
