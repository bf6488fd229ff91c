import { LtsView, StateView } from "../src/types.js";

/** Recorded service responses for a two-buffer vs protocol session
 * (trimmed to what the board logic consumes). */

export const ltsFixture: LtsView = {
  num_states: 5,
  offset: 3,
  tau_label: "tau",
  states: [
    { id: 0, name: "A", system: 1 },
    { id: 1, name: "B", system: 1 },
    { id: 2, name: "C", system: 1 },
    { id: 3, name: "0", system: 2 },
    { id: 4, name: "1", system: 2 },
  ],
  edges: [
    { from: 0, label: "a", tau: false, to: 1 },
    { from: 1, label: "b", tau: false, to: 2 },
    { from: 2, label: "tau", tau: true, to: 0 },
    { from: 3, label: "a", tau: false, to: 4 },
    { from: 4, label: "tau", tau: true, to: 4 },
  ],
};

export const midGameState: StateView = {
  session: "abc123",
  owner: "D",
  position: [0, 3],
  challenge: { action: "a", target: 1 },
  match: { state: 3, face: "frown" },
  reward: "star",
  first_round: false,
  winning_for: "S",
  check_count: 2,
  terminal: false,
  winner: null,
  human_side: "D",
  moves: [
    {
      index: 0,
      rule: "D2b",
      winning_for: "S",
      target: {
        owner: "S",
        position: [1, 4],
        challenge: null,
        match: null,
        reward: "check",
        first_round: false,
        winning_for: "S",
      },
    },
    {
      index: 1,
      rule: "D3a",
      winning_for: "D",
      target: {
        owner: "S",
        position: [0, 4],
        challenge: { action: "a", target: 1 },
        match: { state: 4, face: "frown" },
        reward: "star",
        first_round: false,
        winning_for: "D",
      },
    },
  ],
  transcript: "Spoiler moves A --a--> B\nYou respond by not moving\n",
};

export const freshState: StateView = {
  ...midGameState,
  owner: "S",
  challenge: null,
  match: null,
  check_count: 0,
  moves: [],
  transcript: "Game at (A, 0); Spoiler to move.\n",
};

export const terminalState: StateView = {
  ...midGameState,
  owner: "D",
  terminal: true,
  winner: "S",
  moves: [],
  transcript:
    "Spoiler moves A --a--> B\nYou respond by not moving\nYou lose.\n",
};
