import {
  ConfigView,
  LtsStateView,
  LtsView,
  MoveView,
  Side,
  StateView,
} from "./types.js";

export const FACE_GLYPHS = { frown: "☹", smile: "☺" } as const;

export interface ChallengeArrow {
  from: number;
  to: number;
  action: string;
}

export interface PebbleMarker {
  state: number;
  glyph: string;
  face: "frown" | "smile";
}

export interface MoveEntry {
  index: number;
  rule: string;
  winningFor: Side;
  /** red when picking this move hands the win to the opponent */
  tint: "good" | "bad";
  description: string;
}

export interface BoardView {
  left: LtsStateView[];
  right: LtsStateView[];
  highlighted: [number, number];
  challenge: ChallengeArrow | null;
  pebble: PebbleMarker | null;
  checkCount: number;
  owner: Side;
  humanTurn: boolean;
  moves: MoveEntry[];
  log: string[];
  verdict: string | null;
}

export function describeConfig(c: ConfigView, nameOf: (id: number) => string): string {
  const pos = `(${nameOf(c.position[0])}, ${nameOf(c.position[1])})`;
  const ch = c.challenge
    ? `${c.challenge.action} to ${nameOf(c.challenge.target)}`
    : "none";
  const peb = c.match
    ? `${nameOf(c.match.state)} ${FACE_GLYPHS[c.match.face]}`
    : "none";
  const reward = c.reward === "check" ? "✓" : "∗";
  return `${pos} challenge: ${ch} pebble: ${peb} reward: ${reward}`;
}

export function namer(lts: LtsView): (id: number) => string {
  const names = new Map(lts.states.map((s) => [s.id, s.name]));
  return (id) => names.get(id) ?? String(id);
}

/** Lines of the running transcript, without the empty-history header and
 * without the final verdict line (shown separately as a banner). */
export function logLines(state: StateView): string[] {
  const lines = state.transcript.split("\n").filter((l) => l.length > 0);
  if (lines.length === 1 && lines[0].startsWith("Game at ")) {
    return [];
  }
  if (state.terminal && lines.length > 0) {
    return lines.slice(0, -1);
  }
  return lines;
}

export function verdictBanner(state: StateView): string | null {
  if (!state.terminal) {
    return null;
  }
  const lines = state.transcript.split("\n").filter((l) => l.length > 0);
  return lines[lines.length - 1] ?? null;
}

export function moveEntries(
  state: StateView,
  nameOf: (id: number) => string,
): MoveEntry[] {
  const mine: Side | null = state.human_side;
  return state.moves.map((m: MoveView) => ({
    index: m.index,
    rule: m.rule,
    winningFor: m.winning_for,
    tint: mine !== null && m.winning_for !== mine ? "bad" : "good",
    description: describeConfig(m.target, nameOf),
  }));
}

/** Everything the renderer needs, derived purely from the last state
 * received plus the static LTS description. */
export function deriveBoard(state: StateView, lts: LtsView): BoardView {
  const split = lts.offset ?? lts.num_states;
  const nameOf = namer(lts);
  return {
    left: lts.states.filter((s) => s.id < split),
    right: lts.states.filter((s) => s.id >= split),
    highlighted: [state.position[0], state.position[1]],
    challenge: state.challenge
      ? {
          from: state.position[0],
          to: state.challenge.target,
          action: state.challenge.action,
        }
      : null,
    pebble: state.match
      ? {
          state: state.match.state,
          glyph: FACE_GLYPHS[state.match.face],
          face: state.match.face,
        }
      : null,
    checkCount: state.check_count,
    owner: state.owner,
    humanTurn: !state.terminal && state.owner === state.human_side,
    moves: moveEntries(state, nameOf),
    log: logLines(state),
    verdict: verdictBanner(state),
  };
}

export interface WhatIfView {
  rule: string;
  winner: Side;
  tint: "good" | "bad";
  target: ConfigView;
  description: string;
}

/** Preview of a move without committing it; closing it restores the live
 * board, which is untouched. */
export function whatIf(
  state: StateView,
  moveIndex: number,
  nameOf: (id: number) => string,
): WhatIfView {
  const move = state.moves.find((m) => m.index === moveIndex);
  if (!move) {
    throw new Error(`no legal move with index ${moveIndex}`);
  }
  const mine = state.human_side;
  return {
    rule: move.rule,
    winner: move.winning_for,
    tint: mine !== null && move.winning_for !== mine ? "bad" : "good",
    target: move.target,
    description: describeConfig(move.target, nameOf),
  };
}
