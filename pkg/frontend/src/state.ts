/** The playground's whole condition in one immutable value.
 *
 *  Every transition is a pure function old state -> new state, so the UI can
 *  be re-derived from scratch after each one and the transitions can be
 *  tested without a browser.
 */

import type {
  EnumerationBody,
  ParseErrorBody,
  PendingChoice,
  PickSide,
  SessionView,
} from "./api.js";

export type Mode = "editing" | "awaiting_choice" | "finished" | "failed";

/** One answered prompt, kept visible as a breadcrumb. */
export interface Crumb {
  className: string;
  objectName: string;
  pickedText: string;
}

export interface PlaygroundState {
  source: string;
  session: SessionView | null;
  mode: Mode;
  outcomePanel: EnumerationBody | null;
  parseError: ParseErrorBody | null;
  history: Crumb[];
  toast: string | null;
  busy: boolean;
}

export function initialState(source: string): PlaygroundState {
  return {
    source,
    session: null,
    mode: "editing",
    outcomePanel: null,
    parseError: null,
    history: [],
    toast: null,
    busy: false,
  };
}

export function editSource(s: PlaygroundState, source: string): PlaygroundState {
  // typing invalidates a previous parse error but not a live session
  return { ...s, source, parseError: null };
}

export function beginRequest(s: PlaygroundState): PlaygroundState {
  return { ...s, busy: true, toast: null };
}

/** A fresh run replaces whatever session and breadcrumbs were there. */
export function applyNewSession(s: PlaygroundState, view: SessionView): PlaygroundState {
  return {
    ...s,
    session: view,
    mode: view.status,
    parseError: null,
    history: [],
    busy: false,
  };
}

/** Later views of the same session (after a pick, or a refresh). */
export function applySessionUpdate(s: PlaygroundState, view: SessionView): PlaygroundState {
  return { ...s, session: view, mode: view.status, busy: false };
}

export function recordPick(s: PlaygroundState, pick: PickSide): PlaygroundState {
  const pending = s.session?.pendingChoice;
  if (!pending) return s;
  const crumb: Crumb = {
    className: pending.className,
    objectName: pending.objectName,
    pickedText: pick === "left" ? pending.leftText : pending.rightText,
  };
  return { ...s, history: [...s.history, crumb] };
}

export function applyParseError(s: PlaygroundState, detail: ParseErrorBody): PlaygroundState {
  return { ...s, parseError: detail, session: null, mode: "editing", history: [], busy: false };
}

export function applyEnumeration(s: PlaygroundState, body: EnumerationBody): PlaygroundState {
  return { ...s, outcomePanel: body, parseError: null, busy: false };
}

export function applyToast(s: PlaygroundState, message: string): PlaygroundState {
  return { ...s, toast: message, busy: false };
}

export function dismissToast(s: PlaygroundState): PlaygroundState {
  return { ...s, toast: null };
}

/** The prompt to render, exactly when a session is waiting on one. */
export function pendingChoice(s: PlaygroundState): PendingChoice | null {
  if (s.mode !== "awaiting_choice") return null;
  return s.session?.pendingChoice ?? null;
}
