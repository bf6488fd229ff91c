import { describe, expect, it } from "vitest";

import { SessionApi } from "../src/api.js";
import { BoardView } from "../src/board.js";
import { GameController } from "../src/controller.js";
import { LtsView, StateView } from "../src/types.js";
import { freshState, ltsFixture, midGameState, terminalState } from "./fixtures.js";

interface Call {
  method: string;
  args: unknown[];
}

/** In-memory stand-in for the HTTP client: answers from a scripted queue
 * of states and records every call. */
function fakeApi(queue: StateView[], initial: StateView) {
  const calls: Call[] = [];
  const next = (method: string, ...args: unknown[]): Promise<StateView> => {
    calls.push({ method, args });
    const state = queue.shift();
    if (!state) throw new Error(`unscripted ${method} call`);
    return Promise.resolve(state);
  };
  const api = {
    createSession: (req: unknown) => {
      calls.push({ method: "createSession", args: [req] });
      return Promise.resolve({ id: "sess-1", state: initial });
    },
    getLts: () => {
      calls.push({ method: "getLts", args: [] });
      return Promise.resolve(ltsFixture);
    },
    getState: (id: string) => next("getState", id),
    move: (id: string, k: number) => next("move", id, k),
    autoMove: (id: string) => next("autoMove", id),
    deleteSession: () => Promise.resolve(undefined),
  };
  return { api: api as unknown as SessionApi, calls };
}

function harness(queue: StateView[], initial: StateView) {
  const boards: BoardView[] = [];
  const states: StateView[] = [];
  const errors: string[] = [];
  const { api, calls } = fakeApi(queue, initial);
  const controller = new GameController(api, {
    onBoard: (board: BoardView, state: StateView, _lts: LtsView) => {
      boards.push(board);
      states.push(state);
    },
    onError: (message: string) => errors.push(message),
  });
  return { controller, boards, states, errors, calls };
}

describe("GameController", () => {
  it("load creates a session, fetches the systems, and emits a board", async () => {
    const h = harness([], freshState);
    await h.controller.load("des...", "des...", 0, 0, "branching-ed", "D");
    expect(h.calls.map((c) => c.method)).toEqual(["createSession", "getLts"]);
    expect(h.boards).toHaveLength(1);
    expect(h.boards[0].humanTurn).toBe(false);
    expect(h.states[0]).toBe(freshState);
  });

  it("pickMove commits the choice, then lets the engine reply until it is the human's turn", async () => {
    const engineTurn: StateView = { ...midGameState, owner: "S" };
    const h = harness([engineTurn, engineTurn, midGameState], midGameState);
    await h.controller.load("des...", undefined, 0, 0, "branching", "D");
    await h.controller.pickMove(1);
    expect(h.calls.map((c) => c.method)).toEqual([
      "createSession",
      "getLts",
      "move",
      "autoMove",
      "autoMove",
    ]);
    expect(h.calls[2].args).toEqual(["sess-1", 1]);
    const last = h.boards[h.boards.length - 1];
    expect(last.humanTurn).toBe(true);
  });

  it("stops auto-replying at a terminal state", async () => {
    const h = harness([{ ...terminalState, owner: "S" }], midGameState);
    await h.controller.load("des...", undefined, 0, 0, "branching", "D");
    await h.controller.pickMove(0);
    expect(h.calls.filter((c) => c.method === "autoMove")).toHaveLength(0);
    const last = h.boards[h.boards.length - 1];
    expect(last.verdict).toBe("You lose.");
  });

  it("preview is pure: no requests, no state change", async () => {
    const h = harness([], midGameState);
    await h.controller.load("des...", undefined, 0, 0, "branching", "D");
    const before = h.calls.length;
    const view = h.controller.preview(1);
    expect(view?.winner).toBe("D");
    expect(h.calls.length).toBe(before);
    expect(h.controller.current).toBe(midGameState);
  });

  it("reload reproduces the board exactly", async () => {
    const h = harness([midGameState], midGameState);
    await h.controller.load("des...", undefined, 0, 0, "branching", "D");
    await h.controller.reload();
    expect(h.boards).toHaveLength(2);
    expect(h.boards[1]).toEqual(h.boards[0]);
  });

  it("never overlaps requests: a click during a pending request is dropped", async () => {
    const h = harness([], midGameState);
    await h.controller.load("des...", undefined, 0, 0, "branching", "D");
    let release!: (s: StateView) => void;
    const pending = new Promise<StateView>((resolve) => (release = resolve));
    // eslint-disable-next-line @typescript-eslint/no-explicit-any
    (h.controller as any).api.move = () => {
      h.calls.push({ method: "move", args: [] });
      return pending;
    };
    const first = h.controller.pickMove(0);
    await h.controller.pickMove(1); // dropped: a request is in flight
    expect(h.calls.filter((c) => c.method === "move")).toHaveLength(1);
    release({ ...midGameState });
    await first;
  });

  it("routes failures to the error handler instead of throwing", async () => {
    const h = harness([], midGameState);
    await h.controller.pickMove(0);
    expect(h.errors).toEqual(["no session loaded"]);
    expect(h.boards).toHaveLength(0);
  });
});
