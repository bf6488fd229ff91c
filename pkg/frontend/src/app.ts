import { SessionApi } from "./api.js";
import { BoardView } from "./board.js";
import { GameController } from "./controller.js";
import { graphSvg } from "./render.js";
import { LtsView, Side, StateView } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderMoves(
  board: BoardView,
  controller: GameController,
): HTMLElement {
  const list = document.createElement("ul");
  list.className = "moves";
  for (const move of board.moves) {
    const item = document.createElement("li");
    item.className = `move ${move.tint}`;
    item.textContent = `${move.rule}: ${move.description}`;
    item.title = `winning for ${move.winningFor === "D" ? "Duplicator" : "Spoiler"}`;
    item.dataset.winningFor = move.winningFor;
    if (board.humanTurn) {
      item.addEventListener("mouseenter", () => {
        const preview = controller.preview(move.index);
        if (preview) {
          el("whatif").textContent =
            `${preview.rule} → ${preview.description} — ` +
            `${preview.winner === "D" ? "Duplicator" : "Spoiler"} wins from here`;
          el("whatif").className = `whatif ${preview.tint}`;
        }
      });
      item.addEventListener("mouseleave", () => {
        el("whatif").textContent = "";
        el("whatif").className = "whatif";
      });
      item.addEventListener("click", () => {
        void controller.pickMove(move.index);
      });
    }
    list.appendChild(item);
  }
  return list;
}

function renderBoard(
  board: BoardView,
  state: StateView,
  lts: LtsView,
  controller: GameController,
): void {
  el("graph-left").innerHTML = graphSvg(lts, board.left, board);
  el("graph-right").innerHTML = graphSvg(
    lts,
    board.right.length > 0 ? board.right : board.left,
    board,
  );
  el("checks").textContent = `✓ × ${board.checkCount}`;
  el("turn").textContent = state.terminal
    ? ""
    : board.humanTurn
      ? "your move"
      : "engine to move";
  const movesBox = el("movebox");
  movesBox.innerHTML = "";
  movesBox.appendChild(renderMoves(board, controller));
  el("log").textContent = board.log.join("\n");
  const banner = el("banner");
  if (board.verdict) {
    banner.textContent = board.verdict;
    banner.className = "banner visible";
  } else {
    banner.textContent = "";
    banner.className = "banner";
  }
  if (!state.terminal && !board.humanTurn) {
    void controller.engineStep();
  }
}

export function mount(): void {
  const api = new SessionApi("");
  const controller: GameController = new GameController(api, {
    onBoard: (board, state, lts) => renderBoard(board, state, lts, controller),
    onError: (message) => {
      const banner = el("banner");
      banner.textContent = message;
      banner.className = "banner error visible";
    },
  });
  el<HTMLFormElement>("load-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    const aut = el<HTMLTextAreaElement>("aut1").value;
    const aut2 = el<HTMLTextAreaElement>("aut2").value || undefined;
    const s = Number(el<HTMLInputElement>("state-s").value);
    const t = Number(el<HTMLInputElement>("state-t").value);
    const variant = el<HTMLSelectElement>("variant").value;
    const side = el<HTMLSelectElement>("side").value as Side;
    void controller.load(aut, aut2, s, t, variant, side);
  });
}

if (typeof document !== "undefined" && document.getElementById("load-form")) {
  mount();
}
