import { BoardView } from "./board.js";
import { forceLayout, ltsSeed, Point } from "./layout.js";
import { LtsStateView, LtsView } from "./types.js";

const NODE_R = 16;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface GraphSvgOptions {
  width: number;
  height: number;
}

/** Positions for one side of the board; seeded by the transition structure
 * so the same system is always drawn the same way. */
export function sideLayout(
  lts: LtsView,
  side: LtsStateView[],
  options: GraphSvgOptions,
): Map<number, Point> {
  const ids = new Set(side.map((s) => s.id));
  const edges = lts.edges
    .filter((e) => ids.has(e.from) && ids.has(e.to))
    .map((e): [number, number] => [e.from, e.to]);
  return forceLayout([...ids], edges, ltsSeed(lts) ^ side.length, {
    width: options.width,
    height: options.height,
  });
}

/** SVG markup for one state graph with the current position, challenge
 * arrow and pebble overlaid.  Pure string output: testable without a DOM
 * and directly insertable into the page. */
export function graphSvg(
  lts: LtsView,
  side: LtsStateView[],
  board: BoardView,
  options: GraphSvgOptions = { width: 360, height: 360 },
): string {
  const pos = sideLayout(lts, side, options);
  const ids = new Set(side.map((s) => s.id));
  const parts: string[] = [];
  parts.push(
    `<svg class="lts" viewBox="0 0 ${options.width} ${options.height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  for (const e of lts.edges) {
    if (!ids.has(e.from) || !ids.has(e.to)) continue;
    const a = pos.get(e.from)!;
    const b = pos.get(e.to)!;
    const cls = e.tau ? "edge tau" : "edge";
    if (e.from === e.to) {
      parts.push(
        `<path class="${cls}" d="M ${a.x} ${a.y - NODE_R} C ${a.x - 28} ${
          a.y - 44
        }, ${a.x + 28} ${a.y - 44}, ${a.x} ${a.y - NODE_R}" data-label="${esc(
          e.label,
        )}"/>`,
      );
      parts.push(
        `<text class="edge-label" x="${a.x}" y="${a.y - 40}">${esc(e.label)}</text>`,
      );
    } else {
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      parts.push(
        `<line class="${cls}" x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" data-label="${esc(e.label)}"/>`,
      );
      parts.push(
        `<text class="edge-label" x="${mx}" y="${my - 3}">${esc(e.label)}</text>`,
      );
    }
  }
  if (
    board.challenge &&
    ids.has(board.challenge.from) &&
    ids.has(board.challenge.to)
  ) {
    const a = pos.get(board.challenge.from)!;
    const b = pos.get(board.challenge.to)!;
    parts.push(
      `<line class="challenge" x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" data-action="${esc(board.challenge.action)}"/>`,
    );
  }
  for (const s of side) {
    const p = pos.get(s.id)!;
    const highlighted = board.highlighted.includes(s.id);
    const cls = highlighted ? "node current" : "node";
    parts.push(
      `<circle class="${cls}" cx="${p.x}" cy="${p.y}" r="${NODE_R}" data-id="${s.id}"/>`,
    );
    parts.push(
      `<text class="node-label" x="${p.x}" y="${p.y + 4}">${esc(s.name)}</text>`,
    );
    if (board.pebble && board.pebble.state === s.id) {
      parts.push(
        `<text class="pebble ${board.pebble.face}" x="${p.x + NODE_R}" y="${
          p.y - NODE_R + 6
        }">${board.pebble.glyph}</text>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("");
}
