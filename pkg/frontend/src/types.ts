/** Payload types of the game session HTTP service. */

export type Side = "S" | "D";
export type Face = "frown" | "smile";

export interface ChallengeView {
  action: string;
  target: number;
}

export interface MatchView {
  state: number;
  face: Face;
}

export interface ConfigView {
  owner: Side;
  position: [number, number];
  challenge: ChallengeView | null;
  match: MatchView | null;
  reward: "star" | "check";
  first_round: boolean;
  winning_for: Side;
}

export interface MoveView {
  index: number;
  rule: string;
  winning_for: Side;
  target: ConfigView;
}

export interface StateView extends ConfigView {
  session: string;
  check_count: number;
  terminal: boolean;
  winner: Side | null;
  human_side: Side | null;
  moves: MoveView[];
  transcript: string;
}

export interface CreateResponse {
  id: string;
  state: StateView;
}

export interface LtsStateView {
  id: number;
  name: string;
  system: 1 | 2;
}

export interface LtsEdgeView {
  from: number;
  label: string;
  tau: boolean;
  to: number;
}

export interface LtsView {
  num_states: number;
  offset: number | null;
  tau_label: string;
  states: LtsStateView[];
  edges: LtsEdgeView[];
}

export interface CreateRequest {
  lts: string;
  lts2?: string;
  s: number;
  t: number;
  variant: string;
  human_side?: Side | null;
  names?: string[];
  max_arena?: number;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}
