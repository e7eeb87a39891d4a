// Shapes of the service responses, field for field. Everything the UI
// displays comes out of these objects; the client never computes values,
// margins or decisions on its own.

export interface Measures {
  size: number;
  theta: number;
  f: number;
  s: number;
  num_chains: number;
  num_loops: number;
  tb: number;
  c: number;
}

export interface ComponentEvaluation {
  component: string;
  value_given_open: number;
  controller_keeps: boolean;
}

export interface Evaluation {
  position: string;
  measures: Measures;
  value: number;
  per_component: ComponentEvaluation[];
}

export interface BestMove {
  component: string;
  rule: string;
  standard_move_reason: string | null;
}

export interface TranscriptEntry {
  type: "open" | "keep" | "give_up";
  component: string | null;
  player: number;
  role: string;
}

export interface SessionState {
  initial_position: string;
  remaining: string;
  pending: string | null;
  to_act: "opener" | "controller";
  roles: { opener: number; controller: number };
  boxes: number[];
  prior_advantage: number;
  totals: number[];
  margin: number;
  terminal: boolean;
  transcript: TranscriptEntry[];
  version: number;
  human_player: number;
}

export interface SessionResponse {
  id: number;
  state: SessionState;
}

export interface ActionResponse {
  state: SessionState;
  engine_reply: TranscriptEntry[];
}

export type Role = "opener" | "controller";

// One row of the what-if panel: the value after opening this component and
// how the engine would answer, straight from /evaluate, with the advised
// opening (from /best-move) flagged for highlighting.
export interface WhatIfRow {
  component: string;
  valueGivenOpen: number;
  reply: "Keep" | "Give up";
  advised: boolean;
}

export function whatIfRows(evaluation: Evaluation, best: BestMove | null): WhatIfRow[] {
  return evaluation.per_component.map((row) => ({
    component: row.component,
    valueGivenOpen: row.value_given_open,
    reply: row.controller_keeps ? "Keep" : "Give up",
    advised: best !== null && best.component === row.component,
  }));
}

// A chip per component instance on the board. This only unfolds the
// notation string for display (12+10l, 3^5+4l and so on); lengths are used
// for sizing the chips, nothing else.
export interface Chip {
  label: string;
  length: number;
  loop: boolean;
}

export function chips(notation: string): Chip[] {
  if (notation === "0") return [];
  const out: Chip[] = [];
  for (const term of notation.split("+")) {
    const m = /^(\d+)(l?)(?:\^(\d+))?$/.exec(term);
    if (!m) throw new Error(`unreadable component ${JSON.stringify(term)}`);
    const length = Number(m[1]);
    const loop = m[2] === "l";
    const count = m[3] === undefined ? 1 : Number(m[3]);
    const label = `${length}${loop ? "l" : ""}`;
    for (let i = 0; i < count; i++) out.push({ label, length, loop });
  }
  return out;
}

export function humanToAct(state: SessionState): boolean {
  if (state.terminal) return false;
  const acting = state.to_act === "opener" ? state.roles.opener : state.roles.controller;
  return acting === state.human_player;
}

export function humanIsOpener(state: SessionState): boolean {
  return state.roles.opener === state.human_player;
}

export function describeEntry(entry: TranscriptEntry, humanPlayer: number): string {
  const who = entry.player === humanPlayer ? "you" : "engine";
  switch (entry.type) {
    case "open":
      return `${who}: open ${entry.component}`;
    case "keep":
      return `${who}: keep control`;
    case "give_up":
      return `${who}: take everything`;
  }
}
