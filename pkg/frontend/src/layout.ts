import { LtsView } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** Deterministic 32-bit hash (FNV-1a) of a string. */
export function hashString(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

/** Seed derived from the transition structure, so the same LTS always gets
 * the same diagram across sessions. */
export function ltsSeed(lts: LtsView): number {
  const canon = lts.edges
    .map((e) => `${e.from},${e.label},${e.to}`)
    .sort()
    .join(";");
  return hashString(`${lts.num_states}|${canon}`);
}

/** Mulberry32: small deterministic PRNG. */
export function rng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
}

const DEFAULTS: LayoutOptions = { width: 360, height: 360, iterations: 150 };

/** Plain force-directed layout over one set of node ids.  Deterministic:
 * initial positions come from the seeded PRNG and the iteration order is
 * fixed, so equal inputs give pixel-identical diagrams. */
export function forceLayout(
  nodeIds: number[],
  edges: Array<[number, number]>,
  seed: number,
  options: Partial<LayoutOptions> = {},
): Map<number, Point> {
  const { width, height, iterations } = { ...DEFAULTS, ...options };
  const random = rng(seed);
  const pos = new Map<number, Point>();
  for (const id of nodeIds) {
    pos.set(id, {
      x: width * (0.15 + 0.7 * random()),
      y: height * (0.15 + 0.7 * random()),
    });
  }
  if (nodeIds.length <= 1) {
    for (const id of nodeIds) pos.set(id, { x: width / 2, y: height / 2 });
    return pos;
  }
  const k = Math.sqrt((width * height) / nodeIds.length) / 2;
  const links = edges.filter(
    ([a, b]) => a !== b && pos.has(a) && pos.has(b),
  );
  for (let iter = 0; iter < iterations; iter++) {
    const cool = 1 - iter / iterations;
    const disp = new Map<number, Point>(
      nodeIds.map((id) => [id, { x: 0, y: 0 }]),
    );
    for (let i = 0; i < nodeIds.length; i++) {
      for (let j = i + 1; j < nodeIds.length; j++) {
        const a = pos.get(nodeIds[i])!;
        const b = pos.get(nodeIds[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        const dist = Math.max(Math.hypot(dx, dy), 0.01);
        const force = (k * k) / dist;
        dx /= dist;
        dy /= dist;
        const da = disp.get(nodeIds[i])!;
        const db = disp.get(nodeIds[j])!;
        da.x += dx * force;
        da.y += dy * force;
        db.x -= dx * force;
        db.y -= dy * force;
      }
    }
    for (const [from, to] of links) {
      const a = pos.get(from)!;
      const b = pos.get(to)!;
      let dx = a.x - b.x;
      let dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const force = (dist * dist) / k;
      dx /= dist;
      dy /= dist;
      const da = disp.get(from)!;
      const db = disp.get(to)!;
      da.x -= dx * force;
      da.y -= dy * force;
      db.x += dx * force;
      db.y += dy * force;
    }
    const maxStep = 12 * cool + 0.5;
    for (const id of nodeIds) {
      const p = pos.get(id)!;
      const d = disp.get(id)!;
      const len = Math.max(Math.hypot(d.x, d.y), 0.01);
      const step = Math.min(len, maxStep);
      p.x += (d.x / len) * step;
      p.y += (d.y / len) * step;
      p.x = Math.min(width - 24, Math.max(24, p.x));
      p.y = Math.min(height - 24, Math.max(24, p.y));
    }
  }
  return pos;
}
