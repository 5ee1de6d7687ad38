// Zone 3: compose the governance policy from the element library while the
// gap panel mirrors the server's live rule evaluation. Reordering is applied
// optimistically and reconciled by the next frame.

import type { GapView, Zone3View } from "../types";
import { el, type RenderContext } from "./common";

const MIME = "text/plain";

/** The engine's move semantics: pull the element out, insert at position. */
export function movedOrder(selected: string[], element: string, position: number): string[] {
  const next = selected.filter((id) => id !== element);
  next.splice(position, 0, element);
  return next;
}

export function handleRowDragStart(event: DragEvent, elementId: string): void {
  event.dataTransfer?.setData(MIME, elementId);
  if (event.dataTransfer) event.dataTransfer.effectAllowed = "move";
}

export function handleRowDragOver(event: DragEvent): void {
  event.preventDefault();
  if (event.dataTransfer) event.dataTransfer.dropEffect = "move";
}

/** Dropping onto a document row moves the dragged element to that slot. */
export function handleRowDrop(
  event: DragEvent,
  position: number,
  ctx: RenderContext,
): void {
  event.preventDefault();
  const elementId = event.dataTransfer?.getData(MIME) ?? "";
  const selected = ctx.store.selectedOrder();
  if (!elementId || !selected.includes(elementId)) return;
  const next = movedOrder(selected, elementId, position);
  ctx.store.setDraftSelected(next);
  ctx.dispatch({ kind: "edit_policy", op: "reorder", element: elementId, position });
}

const KIND_LABELS: Record<string, string> = {
  completeness: "Missing section",
  risk_coverage: "Uncovered risk",
  framework_alignment: "Framework unaddressed",
  consistency: "Contradiction",
  flaw_retained: "Flawed clause",
};

function highlightTargets(root: ParentNode, gap: GapView): void {
  for (const marked of root.querySelectorAll(".gap-highlight")) {
    marked.classList.remove("gap-highlight");
  }
  for (const node of root.querySelectorAll<HTMLElement>("[data-element-id]")) {
    const id = node.dataset.elementId ?? "";
    const category = node.dataset.category ?? "";
    if (gap.targets.includes(id) || gap.targets.includes(category)) {
      node.classList.add("gap-highlight");
    }
  }
}

function gapPanel(zone: Zone3View, section: HTMLElement): HTMLElement {
  const report = zone.gap_report;
  if (report.complete) {
    return el("aside", { className: "gap-panel complete" }, [
      el("h3", { text: "Gap analysis" }),
      el("p", { className: "gap-clear", text: "No gaps. The policy is ready to submit." }),
    ]);
  }
  const entries = report.gaps.map((gap) =>
    el(
      "div",
      {
        className: gap.blocking ? "gap-entry blocking" : "gap-entry",
        dataset: { gapKind: gap.kind, gapTargets: gap.targets.join(",") },
        onClick: () => highlightTargets(section, gap),
      },
      [
        el("span", { className: "gap-kind", text: KIND_LABELS[gap.kind] ?? gap.kind }),
        el("p", { className: "gap-message", text: gap.message }),
      ],
    ),
  );
  return el("aside", { className: "gap-panel" }, [
    el("h3", { text: `Gap analysis (${report.gaps.length})` }),
    el("p", { className: "muted", text: "Click a gap to highlight what it points at." }),
    ...entries,
  ]);
}

function libraryPanel(zone: Zone3View, selected: string[], ctx: RenderContext): HTMLElement {
  const cards = zone.elements.map((element) => {
    const inPolicy = selected.includes(element.id);
    return el(
      "div",
      {
        className: inPolicy ? "library-card in-policy" : "library-card",
        dataset: { elementId: element.id, category: element.category },
      },
      [
        el("span", { className: "category-badge", text: element.category }),
        el("p", { text: element.text }),
        el("button", {
          className: "library-add",
          text: inPolicy ? "In policy" : "Add",
          disabled: inPolicy || zone.submitted,
          onClick: () =>
            ctx.dispatch({
              kind: "edit_policy",
              op: "add",
              element: element.id,
              position: ctx.store.selectedOrder().length,
            }),
        }),
      ],
    );
  });
  return el("div", { className: "library" }, [el("h3", { text: "Element library" }), ...cards]);
}

function documentPanel(zone: Zone3View, selected: string[], ctx: RenderContext): HTMLElement {
  const byId = new Map(zone.elements.map((e) => [e.id, e]));
  const rows = selected.map((id, index) => {
    const element = byId.get(id);
    return el(
      "div",
      {
        className: "doc-row",
        draggable: !zone.submitted,
        dataset: { elementId: id, category: element?.category ?? "" },
        onDragStart: (event) => handleRowDragStart(event, id),
        onDragOver: handleRowDragOver,
        onDrop: (event) => {
          if (!zone.submitted) handleRowDrop(event, index, ctx);
        },
      },
      [
        el("span", { className: "doc-index", text: `${index + 1}.` }),
        el("span", { className: "category-badge", text: element?.category ?? "" }),
        el("span", { className: "doc-text", text: element?.text ?? id }),
        el("button", {
          className: "doc-remove",
          text: "×",
          title: "Remove from the policy",
          disabled: zone.submitted,
          onClick: () => ctx.dispatch({ kind: "edit_policy", op: "remove", element: id }),
        }),
      ],
    );
  });
  const blocking = !zone.gap_report.complete;
  return el("div", { className: "composed-doc" }, [
    el("h3", { text: "Your policy" }),
    rows.length === 0
      ? el("p", { className: "muted", text: "The document is empty. Add elements from the library." })
      : el("div", { className: "doc-rows" }, rows),
    el("button", {
      className: "primary submit-policy",
      text: zone.submitted ? "Policy submitted" : "Submit policy",
      disabled: zone.submitted,
      onClick: () => ctx.dispatch({ kind: "submit_policy" }),
    }),
    blocking && !zone.submitted
      ? el("p", { className: "gap-warning", text: "Blocking gaps remain; submitting now will not pass." })
      : el("span", {}),
  ]);
}

export function renderComposer(zone: Zone3View, ctx: RenderContext): HTMLElement {
  const selected = ctx.store.selectedOrder();
  const section = el("section", { className: "zone zone3" });
  section.append(
    libraryPanel(zone, selected, ctx),
    documentPanel(zone, selected, ctx),
    gapPanel(zone, section),
  );
  return section;
}
