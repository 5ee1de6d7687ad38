// Shared DOM helpers and the chrome drawn on every screen.

import type { PlayerAction, PlayerView } from "../types";
import type { Store } from "../store";
import { formatClock } from "../timer";

export interface RenderContext {
  store: Store;
  dispatch(action: PlayerAction): void;
  submitSurvey(question: string, rating: number): void;
  resetSession(): void;
}

interface ElOptions {
  className?: string;
  text?: string;
  title?: string;
  draggable?: boolean;
  disabled?: boolean;
  dataset?: Record<string, string>;
  onClick?: (event: MouseEvent) => void;
  onDragStart?: (event: DragEvent) => void;
  onDragOver?: (event: DragEvent) => void;
  onDrop?: (event: DragEvent) => void;
  onDragEnd?: (event: DragEvent) => void;
}

export function el(
  tag: string,
  options: ElOptions = {},
  children: Array<Node | string> = [],
): HTMLElement {
  const node = document.createElement(tag);
  if (options.className) node.className = options.className;
  if (options.text !== undefined) node.textContent = options.text;
  if (options.title) node.title = options.title;
  if (options.draggable) node.setAttribute("draggable", "true");
  if (options.disabled) node.setAttribute("disabled", "");
  if (options.dataset) {
    for (const [key, value] of Object.entries(options.dataset)) {
      node.dataset[key] = value;
    }
  }
  if (options.onClick) node.addEventListener("click", options.onClick as EventListener);
  if (options.onDragStart) node.addEventListener("dragstart", options.onDragStart as EventListener);
  if (options.onDragOver) node.addEventListener("dragover", options.onDragOver as EventListener);
  if (options.onDrop) node.addEventListener("drop", options.onDrop as EventListener);
  if (options.onDragEnd) node.addEventListener("dragend", options.onDragEnd as EventListener);
  for (const child of children) node.append(child);
  return node;
}

const PHASE_LABELS: Record<string, string> = {
  lobby: "Lobby",
  zone1: "Zone 1: Risk Maze",
  zone2: "Zone 2: Framework Matching",
  zone3: "Zone 3: Policy Composer",
  completed: "Completed",
  expired: "Time Expired",
};

/** Top bar: scenario title, phase, zone scores so far, countdown, link state. */
export function header(view: PlayerView, connection: string): HTMLElement {
  const results = view.zone_results.map((r) =>
    el("span", {
      className: `zone-chip ${r.passed ? "passed" : "failed"}`,
      text: `Z${r.zone_index + 1} ${r.zone_score.toFixed(2)}`,
      title: `zone ${r.zone_index + 1}: score ${r.zone_score.toFixed(3)}, ${r.passed ? "passed" : "failed"}`,
    }),
  );
  return el("header", { className: "topbar" }, [
    el("div", { className: "topbar-titles" }, [
      el("h1", { text: view.scenario.title }),
      el("span", { className: "phase-badge", text: PHASE_LABELS[view.phase] ?? view.phase }),
    ]),
    el("div", { className: "topbar-status" }, [
      ...results,
      el("span", {
        className: "countdown",
        text: formatClock(view.remaining_seconds),
        dataset: { role: "countdown" },
      }),
      el("span", { className: `link-state link-${connection}`, text: connection }),
    ]),
  ]);
}

export function noticeBar(notice: string | null): HTMLElement | null {
  if (!notice) return null;
  return el("div", { className: "notice", text: notice, dataset: { role: "notice" } });
}

/** Hint drawer for the puzzles attached to the active zone. */
export function hintPanel(view: PlayerView, zoneIndex: number, ctx: RenderContext): HTMLElement | null {
  const entries = Object.entries(view.hints).filter(([, h]) => h.zone === zoneIndex);
  if (entries.length === 0) return null;
  const items = entries.map(([puzzleId, hint]) => {
    const revealed = hint.revealed.map((tier) => el("li", { className: "hint-tier", text: tier }));
    const exhausted = hint.revealed.length >= hint.total_tiers;
    return el("div", { className: "hint-puzzle", dataset: { puzzleId } }, [
      el("ul", { className: "hint-tiers" }, revealed),
      el("button", {
        className: "hint-button",
        text: exhausted
          ? "No hints left"
          : `Reveal hint (${hint.revealed.length}/${hint.total_tiers})`,
        disabled: exhausted,
        onClick: () => ctx.dispatch({ kind: "request_hint", puzzle: puzzleId }),
      }),
    ]);
  });
  return el("aside", { className: "hints" }, [el("h3", { text: "Hints" }), ...items]);
}
