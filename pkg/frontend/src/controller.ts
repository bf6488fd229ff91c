import { SessionApi } from "./api.js";
import { BoardView, deriveBoard, namer, whatIf, WhatIfView } from "./board.js";
import { LtsView, Side, StateView } from "./types.js";

export interface ControllerEvents {
  onBoard: (board: BoardView, state: StateView, lts: LtsView) => void;
  onError: (message: string) => void;
}

/** Session driver used by the page.  All game state lives on the server;
 * the controller only keeps the last state received and re-derives the
 * board from it.  Requests are serialized: a move is never sent while
 * another request is in flight. */
export class GameController {
  private sessionId: string | null = null;
  private lts: LtsView | null = null;
  private state: StateView | null = null;
  private busy = false;

  constructor(
    private api: SessionApi,
    private events: ControllerEvents,
  ) {}

  get current(): StateView | null {
    return this.state;
  }

  private emit(): void {
    if (this.state && this.lts) {
      this.events.onBoard(deriveBoard(this.state, this.lts), this.state, this.lts);
    }
  }

  private async guarded<T>(work: () => Promise<T>): Promise<T | undefined> {
    if (this.busy) {
      return undefined;
    }
    this.busy = true;
    try {
      return await work();
    } catch (err) {
      this.events.onError(err instanceof Error ? err.message : String(err));
      return undefined;
    } finally {
      this.busy = false;
    }
  }

  async load(
    aut: string,
    aut2: string | undefined,
    s: number,
    t: number,
    variant: string,
    side: Side,
    names?: string[],
  ): Promise<void> {
    await this.guarded(async () => {
      const created = await this.api.createSession({
        lts: aut,
        lts2: aut2,
        s,
        t,
        variant,
        human_side: side,
        names,
      });
      this.sessionId = created.id;
      this.state = created.state;
      this.lts = await this.api.getLts(created.id);
      this.emit();
    });
  }

  /** Apply the human's chosen move, then let the engine answer until it is
   * the human's turn again (or the play is over). */
  async pickMove(moveIndex: number): Promise<void> {
    await this.guarded(async () => {
      if (!this.sessionId || !this.state) {
        throw new Error("no session loaded");
      }
      if (this.state.terminal) {
        throw new Error("the play is over");
      }
      if (this.state.owner === this.state.human_side) {
        this.state = await this.api.move(this.sessionId, moveIndex);
      }
      while (
        !this.state.terminal &&
        this.state.owner !== this.state.human_side
      ) {
        this.state = await this.api.autoMove(this.sessionId);
      }
      this.emit();
    });
  }

  /** One engine half-move; used when the engine opens the play. */
  async engineStep(): Promise<void> {
    await this.guarded(async () => {
      if (!this.sessionId || !this.state) {
        throw new Error("no session loaded");
      }
      this.state = await this.api.autoMove(this.sessionId);
      this.emit();
    });
  }

  /** Hover/what-if preview; never talks to the server, never mutates. */
  preview(moveIndex: number): WhatIfView | null {
    if (!this.state || !this.lts) {
      return null;
    }
    return whatIf(this.state, moveIndex, namer(this.lts));
  }

  /** Re-fetch the current state; the board must come out identical. */
  async reload(): Promise<void> {
    await this.guarded(async () => {
      if (!this.sessionId) {
        throw new Error("no session loaded");
      }
      this.state = await this.api.getState(this.sessionId);
      this.emit();
    });
  }
}
