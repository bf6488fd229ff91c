import { describe, expect, it } from "vitest";

import { forceLayout, hashString, ltsSeed, rng } from "../src/layout.js";
import { ltsFixture } from "./fixtures.js";

describe("hashing and seeding", () => {
  it("is stable for equal strings and differs for different ones", () => {
    expect(hashString("abc")).toBe(hashString("abc"));
    expect(hashString("abc")).not.toBe(hashString("abd"));
  });

  it("seeds from the transition structure, not edge order", () => {
    const reordered = {
      ...ltsFixture,
      edges: [...ltsFixture.edges].reverse(),
    };
    expect(ltsSeed(reordered)).toBe(ltsSeed(ltsFixture));
    const changed = {
      ...ltsFixture,
      edges: ltsFixture.edges.slice(1),
    };
    expect(ltsSeed(changed)).not.toBe(ltsSeed(ltsFixture));
  });

  it("prng is deterministic", () => {
    const a = rng(42);
    const b = rng(42);
    for (let i = 0; i < 10; i++) {
      expect(a()).toBe(b());
    }
  });
});

describe("forceLayout", () => {
  const nodes = [0, 1, 2, 3];
  const edges: Array<[number, number]> = [
    [0, 1],
    [1, 2],
    [2, 0],
    [2, 3],
  ];

  it("is pixel-deterministic for a fixed seed", () => {
    const a = forceLayout(nodes, edges, 7);
    const b = forceLayout(nodes, edges, 7);
    expect([...b.entries()]).toEqual([...a.entries()]);
  });

  it("changes with the seed", () => {
    const a = forceLayout(nodes, edges, 7);
    const b = forceLayout(nodes, edges, 8);
    const moved = nodes.some(
      (n) => a.get(n)!.x !== b.get(n)!.x || a.get(n)!.y !== b.get(n)!.y,
    );
    expect(moved).toBe(true);
  });

  it("keeps every node inside the canvas", () => {
    const pos = forceLayout(nodes, edges, 3, { width: 200, height: 120 });
    for (const p of pos.values()) {
      expect(p.x).toBeGreaterThanOrEqual(24);
      expect(p.x).toBeLessThanOrEqual(200 - 24);
      expect(p.y).toBeGreaterThanOrEqual(24);
      expect(p.y).toBeLessThanOrEqual(120 - 24);
    }
  });

  it("centres a single node", () => {
    const pos = forceLayout([5], [], 1, { width: 100, height: 100 });
    expect(pos.get(5)).toEqual({ x: 50, y: 50 });
  });

  it("separates distinct nodes", () => {
    const pos = forceLayout(nodes, edges, 11);
    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        const a = pos.get(nodes[i])!;
        const b = pos.get(nodes[j])!;
        expect(Math.hypot(a.x - b.x, a.y - b.y)).toBeGreaterThan(5);
      }
    }
  });
});
