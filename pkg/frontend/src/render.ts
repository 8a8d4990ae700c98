/** state -> HTML string. No DOM access here, so the same code is testable in
 *  plain node and the page is always a function of the current state. */

import type { WireOutcome } from "./api.js";
import { pendingChoice, type PlaygroundState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Line-number gutter for the editor; the error line, if any, is marked. */
export function renderGutter(source: string, errorLine: number | null): string {
  const lines = source.split("\n").length;
  const rows: string[] = [];
  for (let n = 1; n <= lines; n++) {
    const cls = n === errorLine ? ' class="error-line"' : "";
    rows.push(`<div${cls}>${n}</div>`);
  }
  return rows.join("");
}

function renderControls(s: PlaygroundState): string {
  const dis = s.busy ? " disabled" : "";
  return `<div class="controls">
    <button data-action="run"${dis}>Run</button>
    <button data-action="enumerate"${dis}>Enumerate</button>
    ${s.busy ? '<span class="spinner">working…</span>' : ""}
  </div>`;
}

function renderParseError(s: PlaygroundState): string {
  if (!s.parseError) return "";
  const e = s.parseError;
  return `<div class="parse-error">line ${e.line}, col ${e.col}: ${escapeHtml(e.parseError)}</div>`;
}

function renderPrompt(s: PlaygroundState): string {
  const p = pendingChoice(s);
  if (!p) return "";
  const dis = s.busy ? " disabled" : "";
  return `<div class="prompt">
    <p class="question">Choose for ${escapeHtml(p.className)} <span class="obj">(${escapeHtml(p.objectName)})</span></p>
    <button data-action="pick" data-pick="left"${dis}>${escapeHtml(p.leftText)}</button>
    <button data-action="pick" data-pick="right"${dis}>${escapeHtml(p.rightText)}</button>
  </div>`;
}

function renderHistory(s: PlaygroundState): string {
  if (s.history.length === 0) return "";
  const crumbs = s.history
    .map(c => `<li>${escapeHtml(c.objectName)}: ${escapeHtml(c.pickedText)}</li>`)
    .join("");
  return `<ul class="history">${crumbs}</ul>`;
}

function renderFields(fields: Record<string, Record<string, unknown>>): string {
  const rows = Object.entries(fields).map(([obj, fs]) => {
    const shown = Object.entries(fs)
      .map(([k, v]) => `${escapeHtml(k)} = ${escapeHtml(String(v))}`)
      .join(", ");
    return `<li>${escapeHtml(obj)}: ${shown || "(no fields)"}</li>`;
  });
  return rows.length ? `<ul class="fields">${rows.join("")}</ul>` : "";
}

function renderSessionPanel(s: PlaygroundState): string {
  if (!s.session) return "";
  const out = s.session.output
    .map(line => `<div class="line">${escapeHtml(line)}</div>`)
    .join("");
  let tail = "";
  if (s.mode === "finished") {
    tail = `<p class="status ok">finished</p>${renderFields(s.session.finalFields ?? {})}`;
  } else if (s.mode === "failed") {
    tail = `<p class="status bad">failed: ${escapeHtml(s.session.error ?? "")}</p>`;
  }
  return `<div class="run-panel">
    ${renderHistory(s)}
    ${renderPrompt(s)}
    <pre class="output" data-role="output">${out}</pre>
    ${tail}
  </div>`;
}

function renderOutcomeRow(o: WireOutcome, i: number): string {
  const fields = Object.entries(o.finalFields)
    .map(([obj, fs]) =>
      `${obj}: ` + Object.entries(fs).map(([k, v]) => `${k} = ${v}`).join(", "))
    .join("; ");
  const status = o.status === "failed"
    ? `failed: ${o.error ?? ""}`
    : "finished";
  return `<tr class="outcome">
    <td>${i + 1}</td>
    <td><code>${escapeHtml(o.choices || "-")}</code></td>
    <td>${escapeHtml(status)}</td>
    <td>${o.output.map(escapeHtml).join("<br>")}</td>
    <td>${escapeHtml(fields)}</td>
  </tr>`;
}

function renderOutcomes(s: PlaygroundState): string {
  if (!s.outcomePanel) return "";
  const body = s.outcomePanel.outcomes.map(renderOutcomeRow).join("");
  const banner = s.outcomePanel.truncated
    ? `<div class="banner">truncated at ${s.outcomePanel.outcomes.length}</div>`
    : "";
  return `<div class="outcomes">
    <h2>Outcomes</h2>
    ${banner}
    <table>
      <thead><tr><th>#</th><th>choices</th><th>status</th><th>output</th><th>final fields</th></tr></thead>
      <tbody>${body}</tbody>
    </table>
  </div>`;
}

function renderToast(s: PlaygroundState): string {
  if (!s.toast) return "";
  return `<div class="toast" data-action="dismiss-toast">${escapeHtml(s.toast)}</div>`;
}

export function render(s: PlaygroundState): string {
  return [
    renderControls(s),
    renderParseError(s),
    renderSessionPanel(s),
    renderOutcomes(s),
    renderToast(s),
  ].join("\n");
}
