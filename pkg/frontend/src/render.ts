import type { AppState } from "./app.js";
import type { SessionState, WhatIfRow } from "./model.js";
import { chips, describeEntry, humanIsOpener, humanToAct, whatIfRows } from "./model.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function chipMarkup(label: string, length: number, loop: boolean, extra = ""): string {
  const kind = loop ? "chip loop" : "chip chain";
  const style = `--len:${length}`;
  return `<span class="${kind}${extra}" style="${style}">${escapeHtml(label)}</span>`;
}

function boardMarkup(state: SessionState, clickable: boolean): string {
  const parts: string[] = [];
  for (const chip of chips(state.remaining)) {
    if (clickable) {
      parts.push(
        `<button class="chip ${chip.loop ? "loop" : "chain"}" style="--len:${chip.length}" ` +
          `data-act="open" data-component="${escapeHtml(chip.label)}">${escapeHtml(chip.label)}</button>`,
      );
    } else {
      parts.push(chipMarkup(chip.label, chip.length, chip.loop));
    }
  }
  if (state.pending !== null) {
    for (const chip of chips(state.pending)) {
      parts.push(chipMarkup(chip.label, chip.length, chip.loop, " pending"));
    }
  }
  if (parts.length === 0) parts.push(`<span class="empty-board">no components left</span>`);
  return `<div class="board">${parts.join("")}</div>`;
}

export function whatIfTable(rows: WhatIfRow[]): string {
  const body = rows
    .map((row) => {
      const cls = row.advised ? ` class="advised"` : "";
      const mark = row.advised ? " &#9733;" : "";
      return (
        `<tr${cls}><td>${escapeHtml(row.component)}</td>` +
        `<td>${row.valueGivenOpen}</td>` +
        `<td>${row.reply}</td>` +
        `<td>${mark}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="whatif"><thead><tr>` +
    `<th>open</th><th>value</th><th>engine reply</th><th></th>` +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

function evaluationMarkup(state: AppState): string {
  if (state.evalError !== null) {
    return `<p class="error">${escapeHtml(state.evalError)}</p>`;
  }
  if (state.evaluation === null) {
    return `<p class="hint">enter a position like 12+10l or 3^5+4l+8l and evaluate it</p>`;
  }
  const ev = state.evaluation;
  const m = ev.measures;
  const outcome = state.advantage - ev.value;
  const sign = state.advantage >= 0 ? "+" : "";
  const advice =
    state.bestMove === null
      ? ""
      : `<p class="advice">advised opening: <strong>${escapeHtml(state.bestMove.component)}</strong>` +
        ` <span class="rule">(${escapeHtml(state.bestMove.rule)})</span></p>`;
  return (
    `<p class="figures">` +
    `<span>position <strong>${escapeHtml(ev.position)}</strong></span>` +
    `<span>v = <strong>${ev.value}</strong></span>` +
    `<span>c = ${m.c}</span>` +
    `<span>tb = ${m.tb}</span>` +
    `<span>size ${m.size}</span>` +
    `</p>` +
    advice +
    whatIfTable(whatIfRows(ev, state.bestMove)) +
    `<p class="outcome">outcome with advantage ${sign}${state.advantage}: ` +
    `<strong>${outcome > 0 ? "+" : ""}${outcome}</strong> for the opener</p>`
  );
}

function scoreMarkup(state: SessionState): string {
  const you = state.human_player;
  const engine = 1 - you;
  const boxes = `boxes you ${state.boxes[you] ?? 0} &middot; engine ${state.boxes[engine] ?? 0}`;
  const totals =
    `with advantage ${state.prior_advantage >= 0 ? "+" : ""}${state.prior_advantage}: ` +
    `you ${state.totals[you] ?? 0} &middot; engine ${state.totals[engine] ?? 0}`;
  return `<p class="scores">${boxes}<br>${totals}</p>`;
}

export function finalBanner(state: SessionState): string {
  const you = state.totals[state.human_player] ?? 0;
  const engine = state.totals[1 - state.human_player] ?? 0;
  if (you === engine) return `Game over: ${you}-${engine}, a tie.`;
  if (you > engine) return `Game over: ${you}-${engine} to you.`;
  return `Game over: ${engine}-${you} to the engine.`;
}

function sessionMarkup(state: AppState): string {
  const session = state.session;
  if (session === null) {
    return `<p class="hint">start a game to play the position against the engine</p>`;
  }
  const yourRole = humanIsOpener(session) ? "opener" : "controller";
  const badges =
    `<p class="badges"><span class="badge">you: ${yourRole}</span>` +
    `<span class="badge">engine: ${yourRole === "opener" ? "controller" : "opener"}</span></p>`;
  const yourTurn = humanToAct(session);
  const openable = yourTurn && session.pending === null;
  const parts = [badges, boardMarkup(session, openable), scoreMarkup(session)];
  if (session.terminal) {
    parts.push(`<p class="banner">${finalBanner(session)}</p>`);
  } else if (openable) {
    parts.push(`<p class="prompt">your move: pick a component to open</p>`);
  } else if (yourTurn) {
    parts.push(
      `<p class="prompt">the engine opened ${escapeHtml(session.pending ?? "")}: keep control or take everything?</p>` +
        `<p class="choices"><button data-act="keep">keep control</button>` +
        `<button data-act="giveup">take everything</button></p>`,
    );
  }
  if (state.lastReply.length > 0) {
    const lines = state.lastReply
      .map((entry) => escapeHtml(describeEntry(entry, session.human_player)))
      .join("<br>");
    parts.push(`<p class="reply">${lines}</p>`);
  }
  if (session.transcript.length > 0) {
    const lines = session.transcript
      .map((entry) => `<li>${escapeHtml(describeEntry(entry, session.human_player))}</li>`)
      .join("");
    parts.push(`<details class="transcript"><summary>transcript</summary><ol>${lines}</ol></details>`);
  }
  return parts.join("");
}

export function render(state: AppState): string {
  const toast =
    state.toast === null
      ? ""
      : `<div class="toast" data-act="dismiss">${escapeHtml(state.toast)} <small>(click to dismiss)</small></div>`;
  const sign = state.advantage >= 0 ? "+" : "";
  return (
    toast +
    `<section class="panel">` +
    `<h2>position</h2>` +
    `<form data-act="evaluate-form" class="entry">` +
    `<input id="position" name="position" value="${escapeHtml(state.positionInput)}" ` +
    `spellcheck="false" autocomplete="off">` +
    `<button data-act="evaluate" type="submit"${state.busy ? " disabled" : ""}>evaluate</button>` +
    `</form>` +
    `<p class="slider">advantage ${sign}${state.advantage} ` +
    `<input id="advantage" type="range" min="-20" max="20" step="1" value="${state.advantage}"></p>` +
    `<p class="roles">play as ` +
    `<label><input type="radio" name="role" value="opener"${state.humanRole === "opener" ? " checked" : ""}> opener</label> ` +
    `<label><input type="radio" name="role" value="controller"${state.humanRole === "controller" ? " checked" : ""}> controller</label> ` +
    `<button data-act="start"${state.busy ? " disabled" : ""}>start game</button></p>` +
    `</section>` +
    `<section class="panel"><h2>what if</h2>${evaluationMarkup(state)}</section>` +
    `<section class="panel"><h2>game</h2>${sessionMarkup(state)}</section>`
  );
}
