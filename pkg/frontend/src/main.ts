/** Wiring: one mutable slot holding the current state, repainted after every
 *  transition. The textarea lives outside the repainted region so the cursor
 *  survives; everything else is re-derived. */

import { makeApi, type PickSide, type SessionResult } from "./api.js";
import { render, renderGutter } from "./render.js";
import {
  applyEnumeration,
  applyNewSession,
  applyParseError,
  applySessionUpdate,
  applyToast,
  beginRequest,
  dismissToast,
  editSource,
  initialState,
  recordPick,
  type PlaygroundState,
} from "./state.js";
import { TEMPLEU_SOURCE } from "./templeu.js";

const api = makeApi("");

const app = document.getElementById("app") as HTMLElement;
const gutter = document.getElementById("gutter") as HTMLElement;
const editor = document.getElementById("source") as HTMLTextAreaElement;

let state: PlaygroundState = initialState(TEMPLEU_SOURCE);
editor.value = state.source;

function paint(): void {
  app.innerHTML = render(state);
  gutter.innerHTML = renderGutter(state.source, state.parseError?.line ?? null);
}

function update(next: PlaygroundState): void {
  state = next;
  paint();
}

function applyResult(result: SessionResult, fresh: boolean): void {
  if (result.kind === "session") {
    update(fresh ? applyNewSession(state, result.view)
                 : applySessionUpdate(state, result.view));
  } else if (result.kind === "parseError") {
    update(applyParseError(state, result.detail));
  } else {
    update(applyToast(state, result.error));
  }
}

async function runProgram(): Promise<void> {
  update(beginRequest(state));
  try {
    applyResult(await api.createSession(state.source), true);
  } catch (err) {
    update(applyToast(state, `request failed: ${String(err)}`));
  }
}

async function pick(side: PickSide): Promise<void> {
  const session = state.session;
  const pending = session?.pendingChoice;
  if (!session || !pending) return;
  update(recordPick(state, side));
  update(beginRequest(state));
  try {
    const result = await api.submitChoice(session.sessionId, pending.pointId, side);
    if (result.kind === "protocolError") {
      // somebody else moved the session along; show why, then resync
      update(applyToast(state, `decision rejected: ${result.error}`));
      applyResult(await api.getSession(session.sessionId), false);
      return;
    }
    applyResult(result, false);
  } catch (err) {
    update(applyToast(state, `request failed: ${String(err)}`));
  }
}

async function enumerateOutcomes(): Promise<void> {
  update(beginRequest(state));
  try {
    const result = await api.enumerate(state.source);
    if (result.kind === "enumeration") {
      update(applyEnumeration(state, result.body));
    } else if (result.kind === "parseError") {
      update(applyParseError(state, result.detail));
    } else {
      update(applyToast(state, result.error));
    }
  } catch (err) {
    update(applyToast(state, `request failed: ${String(err)}`));
  }
}

editor.addEventListener("input", () => {
  update(editSource(state, editor.value));
});

editor.addEventListener("scroll", () => {
  gutter.scrollTop = editor.scrollTop;
});

app.addEventListener("click", event => {
  const target = (event.target as HTMLElement).closest("[data-action]");
  if (!target || state.busy && target.getAttribute("data-action") !== "dismiss-toast") return;
  switch (target.getAttribute("data-action")) {
    case "run":
      void runProgram();
      break;
    case "enumerate":
      void enumerateOutcomes();
      break;
    case "pick":
      void pick(target.getAttribute("data-pick") as PickSide);
      break;
    case "dismiss-toast":
      update(dismissToast(state));
      break;
  }
});

paint();
