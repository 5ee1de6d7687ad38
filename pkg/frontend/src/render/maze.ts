// Zone 1: the facility maze as a clickable node graph, the current
// encounter's risk card with flag controls, and the priority rank panel.

import type { EncounterCard, Zone1View } from "../types";
import { el, type RenderContext } from "./common";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 420;

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

/** Known map nodes: everything visited plus the frontier behind its exits. */
export function knownNodes(zone: Zone1View): string[] {
  const known = new Set<string>(zone.visited);
  for (const exits of Object.values(zone.exits)) {
    for (const target of exits) known.add(target);
  }
  return [...known].sort();
}

/** Deterministic circular layout, entry pinned to the left. */
export function layoutPositions(ids: string[], entry: string): Map<string, { x: number; y: number }> {
  const ordered = [entry, ...ids.filter((id) => id !== entry)];
  const cx = WIDTH / 2;
  const cy = HEIGHT / 2;
  const radius = Math.min(cx, cy) - 60;
  const positions = new Map<string, { x: number; y: number }>();
  ordered.forEach((id, index) => {
    const angle = Math.PI + (2 * Math.PI * index) / ordered.length;
    positions.set(id, {
      x: Math.round(cx + radius * Math.cos(angle)),
      y: Math.round(cy + radius * Math.sin(angle)),
    });
  });
  return positions;
}

function mazeMap(zone: Zone1View, ctx: RenderContext): HTMLElement {
  const ids = knownNodes(zone);
  const positions = layoutPositions(ids, zone.entry);
  const visited = new Set(zone.visited);
  const reachable = new Set(zone.exits[zone.current_node] ?? []);

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "maze-map",
    role: "img",
  });

  const drawn = new Set<string>();
  for (const [from, exits] of Object.entries(zone.exits)) {
    for (const to of exits) {
      const key = [from, to].sort().join("|");
      if (drawn.has(key)) continue;
      drawn.add(key);
      const a = positions.get(from);
      const b = positions.get(to);
      if (!a || !b) continue;
      svg.append(
        svgEl("line", {
          x1: String(a.x),
          y1: String(a.y),
          x2: String(b.x),
          y2: String(b.y),
          class: "maze-edge",
        }),
      );
    }
  }

  for (const id of ids) {
    const pos = positions.get(id)!;
    const classes = ["maze-node"];
    if (id === zone.current_node) classes.push("current");
    if (!visited.has(id)) classes.push("unexplored");
    if (reachable.has(id)) classes.push("reachable");
    if (id === zone.exit) classes.push("exit");
    const group = svgEl("g", {
      class: classes.join(" "),
      transform: `translate(${pos.x}, ${pos.y})`,
    });
    group.dataset.nodeId = id;
    group.append(svgEl("circle", { r: "22" }));
    const label = svgEl("text", { y: "40", "text-anchor": "middle" });
    label.textContent = visited.has(id) ? (zone.nodes[id]?.description ?? id) : "?";
    group.append(label);
    if (zone.nodes[id]?.encounter) {
      const marker = svgEl("text", { y: "5", "text-anchor": "middle", class: "encounter-mark" });
      marker.textContent = "!";
      group.append(marker);
    }
    if (reachable.has(id)) {
      group.addEventListener("click", () => ctx.dispatch({ kind: "move", to: id }));
    }
    svg.append(group);
  }

  const wrapper = el("div", { className: "maze-map-wrapper" });
  wrapper.append(svg);
  return wrapper;
}

function encounterPanel(zone: Zone1View, ctx: RenderContext): HTMLElement {
  const card = zone.nodes[zone.current_node]?.encounter ?? null;
  if (!card) {
    return el("div", { className: "encounter empty" }, [
      el("p", { text: zone.nodes[zone.current_node]?.description ?? "" }),
      el("p", { className: "muted", text: "Nothing to assess here. Keep exploring." }),
    ]);
  }
  const decision = zone.flags[card.id];
  const flagged = decision === true;
  const dismissed = decision === false;
  return el("div", { className: "encounter", dataset: { encounterId: card.id } }, [
    el("h3", { text: card.title }),
    el("p", { text: card.description }),
    el("p", {
      className: "severity-line",
      text: `Likelihood ${card.likelihood} / 5 · Impact ${card.impact} / 5`,
    }),
    el("div", { className: "flag-buttons" }, [
      el("button", {
        className: flagged ? "flag-yes active" : "flag-yes",
        text: flagged ? "Flagged as risk" : "Flag as risk",
        disabled: zone.submitted,
        onClick: () => ctx.dispatch({ kind: "flag_risk", encounter: card.id, decision: true }),
      }),
      el("button", {
        className: dismissed ? "flag-no active" : "flag-no",
        text: dismissed ? "Dismissed" : "Dismiss",
        disabled: zone.submitted,
        onClick: () => ctx.dispatch({ kind: "flag_risk", encounter: card.id, decision: false }),
      }),
    ]),
  ]);
}

/** Titles for flagged risks, harvested from the encounter cards seen so far. */
function riskCards(zone: Zone1View): Map<string, EncounterCard> {
  const cards = new Map<string, EncounterCard>();
  for (const node of Object.values(zone.nodes)) {
    if (node.encounter) cards.set(node.encounter.id, node.encounter);
  }
  return cards;
}

function rankPanel(zone: Zone1View, ctx: RenderContext): HTMLElement {
  const order = ctx.store.rankingOrder();
  const cards = riskCards(zone);

  if (zone.submitted) {
    const rows = (zone.ranking ?? []).map((id, index) =>
      el("li", { className: "rank-row", text: `${index + 1}. ${cards.get(id)?.title ?? id}` }),
    );
    return el("div", { className: "rank-panel submitted" }, [
      el("h3", { text: "Submitted priority order" }),
      el("ol", { className: "rank-list" }, rows),
    ]);
  }

  const move = (index: number, delta: number) => {
    const next = [...order];
    const target = index + delta;
    if (target < 0 || target >= next.length) return;
    const [item] = next.splice(index, 1);
    next.splice(target, 0, item!);
    ctx.store.setDraftRanking(next);
  };

  const rows = order.map((id, index) =>
    el("li", { className: "rank-row", dataset: { riskId: id } }, [
      el("span", { className: "rank-title", text: cards.get(id)?.title ?? id }),
      el("button", {
        className: "rank-up",
        text: "▲",
        disabled: index === 0,
        onClick: () => move(index, -1),
      }),
      el("button", {
        className: "rank-down",
        text: "▼",
        disabled: index === order.length - 1,
        onClick: () => move(index, 1),
      }),
    ]),
  );

  return el("div", { className: "rank-panel" }, [
    el("h3", { text: "Priority ranking" }),
    el("p", {
      className: "muted",
      text:
        order.length === 0
          ? "Flag risks in the maze to build your ranking."
          : "Order your flagged risks from most to least urgent.",
    }),
    el("ol", { className: "rank-list" }, rows),
    el("button", {
      className: "primary submit-ranking",
      text: "Submit ranking",
      disabled: order.length === 0,
      onClick: () => ctx.dispatch({ kind: "submit_ranking", ranking: ctx.store.rankingOrder() }),
    }),
  ]);
}

export function renderMaze(zone: Zone1View, ctx: RenderContext): HTMLElement {
  return el("section", { className: "zone zone1" }, [
    mazeMap(zone, ctx),
    el("div", { className: "zone1-side" }, [encounterPanel(zone, ctx), rankPanel(zone, ctx)]),
  ]);
}
