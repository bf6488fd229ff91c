import { ChildProcess, spawn } from "node:child_process";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionApi } from "../src/api.js";
import { logLines } from "../src/board.js";
import { ConfigView, StateView } from "../src/types.js";

/** End-to-end checks against the real HTTP service: the browser client is
 * pointed at a freshly spawned server process, plays full sessions, and the
 * log it would display is compared against the recorded reference play. */

const dataDir = fileURLToPath(new URL("../../tests/data/", import.meta.url));
const bufferAut = readFileSync(dataDir + "buffer.aut", "utf8");
const abpAut = readFileSync(dataDir + "abp.aut", "utf8");
const golden = readFileSync(dataDir + "abp_transcript.golden", "utf8")
  .split("\n")
  .filter((l) => l.length > 0);

const port = 18000 + (process.pid % 2000);
const base = `http://127.0.0.1:${port}`;
let server: ChildProcess;

async function waitReady(): Promise<void> {
  for (let i = 0; i < 150; i++) {
    try {
      const res = await fetch(`${base}/api/session/none`);
      if (res.status === 404) return;
    } catch {
      /* not listening yet */
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    [
      "-m",
      "uvicorn",
      "bisimgame.service:app",
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
      "--log-level",
      "warning",
    ],
    { stdio: ["ignore", "ignore", "inherit"] },
  );
  await waitReady();
}, 30000);

afterAll(() => {
  server?.kill();
});

function api(): SessionApi {
  return new SessionApi(base, fetch);
}

function configKey(c: ConfigView): string {
  return JSON.stringify([
    c.owner,
    c.position,
    c.challenge,
    c.match,
    c.reward,
    c.first_round,
  ]);
}

async function createReferenceSession(): Promise<{ id: string; state: StateView }> {
  const created = await api().createSession({
    lts: bufferAut,
    lts2: abpAut,
    s: 0,
    t: 0,
    variant: "branching-ed",
    human_side: "D",
    names: ["A", "B", "C"],
  });
  return created;
}

describe("played through the live service", () => {
  it("shows the reference play line for line when the losing side explores", async () => {
    const client = api();
    const { id, state: initial } = await createReferenceSession();
    expect(initial.winning_for).toBe("S");

    // The winner follows its strategy; the human (losing defender) tries
    // each option of a configuration once and gives up when a configuration
    // comes around again with nothing left to try.
    let state = initial;
    const tried = new Map<string, number>();
    let exhausted = false;
    for (let round = 0; round < 500 && !state.terminal; round++) {
      if (state.owner !== "D") {
        state = await client.autoMove(id);
        continue;
      }
      const key = configKey(state);
      const next = tried.get(key) ?? 0;
      if (next >= state.moves.length) {
        exhausted = true;
        break;
      }
      tried.set(key, next + 1);
      state = await client.move(id, next);
    }
    expect(exhausted).toBe(true);

    const shown = logLines(state);
    expect(golden[golden.length - 1]).toBe("You explored all options. You lose.");
    expect(shown).toEqual(golden.slice(0, -1));
    await client.deleteSession(id);
  }, 60000);

  it("previews every move with the winner actually reached on commit", async () => {
    const client = api();
    const { id, state: initial } = await createReferenceSession();
    let state = initial;
    let checked = 0;
    for (let round = 0; round < 20 && !state.terminal; round++) {
      const before = state.moves;
      if (state.owner === "D") {
        // vary the human's route: first pass takes the last option,
        // later passes the first
        const pick = before[round < 2 ? before.length - 1 : 0];
        state = await client.move(id, pick.index);
        expect(state.winning_for).toBe(pick.winning_for);
        expect(configKey(state)).toBe(configKey(pick.target));
      } else {
        state = await client.autoMove(id);
        const taken = before.find(
          (m) => configKey(m.target) === configKey(state),
        );
        expect(taken).toBeDefined();
        expect(state.winning_for).toBe(taken!.winning_for);
      }
      checked++;
    }
    expect(checked).toBeGreaterThanOrEqual(10);
    await client.deleteSession(id);
  }, 60000);

  it("serves the combined systems with display names and the split point", async () => {
    const client = api();
    const { id } = await createReferenceSession();
    const lts = await client.getLts(id);
    expect(lts.offset).toBe(3);
    expect(lts.states.slice(0, 3).map((s) => s.name)).toEqual(["A", "B", "C"]);
    expect(lts.states[3]).toMatchObject({ name: "0", system: 2 });
    expect(lts.edges.some((e) => e.tau)).toBe(true);
    await client.deleteSession(id);
    await expect(client.getState(id)).rejects.toMatchObject({ status: 404 });
  }, 30000);
});
