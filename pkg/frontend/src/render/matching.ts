// Zone 2: drag controls from the tray onto framework columns. A control
// can sit in several columns at once; dropping adds to its assignment set
// and the chip's remove button takes it back out.

import type { Zone2View } from "../types";
import { el, type RenderContext } from "./common";

const MIME = "text/plain";

export function handleControlDragStart(event: DragEvent, controlId: string): void {
  event.dataTransfer?.setData(MIME, controlId);
  if (event.dataTransfer) event.dataTransfer.effectAllowed = "copy";
}

export function handleColumnDragOver(event: DragEvent): void {
  event.preventDefault();
  if (event.dataTransfer) event.dataTransfer.dropEffect = "copy";
}

/** Drop posts the union of the control's current set and the target column. */
export function handleColumnDrop(
  event: DragEvent,
  frameworkId: string,
  zone: Zone2View,
  ctx: RenderContext,
): void {
  event.preventDefault();
  const controlId = event.dataTransfer?.getData(MIME) ?? "";
  if (!controlId || !zone.controls.some((c) => c.id === controlId)) return;
  const current = zone.assignments[controlId] ?? [];
  if (current.includes(frameworkId)) return;
  const frameworks = [...current, frameworkId].sort();
  ctx.dispatch({ kind: "assign", control: controlId, frameworks });
}

/** Chip removal posts the set minus the chip's column. */
export function removeAssignment(
  zone: Zone2View,
  controlId: string,
  frameworkId: string,
  ctx: RenderContext,
): void {
  const current = zone.assignments[controlId] ?? [];
  const frameworks = current.filter((id) => id !== frameworkId);
  ctx.dispatch({ kind: "assign", control: controlId, frameworks });
}

function controlCard(zone: Zone2View, controlId: string): HTMLElement {
  const control = zone.controls.find((c) => c.id === controlId)!;
  const children: Array<Node | string> = [el("span", { className: "control-text", text: control.text })];
  if (control.context_tag) {
    children.push(el("span", { className: "context-tag", text: control.context_tag }));
  }
  const assigned = zone.assignments[controlId]?.length ?? 0;
  if (assigned > 0) {
    children.push(el("span", { className: "assigned-count", text: `${assigned}` }));
  }
  return el(
    "div",
    {
      className: "control-card",
      draggable: !zone.submitted,
      dataset: { controlId },
      onDragStart: (event) => handleControlDragStart(event, controlId),
    },
    children,
  );
}

function frameworkColumn(zone: Zone2View, frameworkId: string, ctx: RenderContext): HTMLElement {
  const framework = zone.frameworks.find((f) => f.id === frameworkId)!;
  const chips = zone.controls
    .filter((c) => (zone.assignments[c.id] ?? []).includes(frameworkId))
    .map((c) =>
      el("div", { className: "assignment-chip", dataset: { controlId: c.id } }, [
        el("span", { text: c.text }),
        el("button", {
          className: "chip-remove",
          text: "×",
          title: "Remove from this framework",
          disabled: zone.submitted,
          onClick: () => removeAssignment(zone, c.id, frameworkId, ctx),
        }),
      ]),
    );
  return el(
    "div",
    {
      className: "framework-column",
      dataset: { frameworkId },
      onDragOver: handleColumnDragOver,
      onDrop: (event) => {
        if (!zone.submitted) handleColumnDrop(event, frameworkId, zone, ctx);
      },
    },
    [
      el("h3", { text: framework.name }),
      el("p", { className: "muted framework-blurb", text: framework.description }),
      el("div", { className: "column-chips" }, chips),
    ],
  );
}

export function renderMatching(zone: Zone2View, ctx: RenderContext): HTMLElement {
  const tray = el(
    "div",
    { className: "control-tray" },
    [
      el("h3", { text: "Controls" }),
      el("p", { className: "muted", text: "Drag each control onto every framework it belongs to." }),
      ...zone.controls.map((c) => controlCard(zone, c.id)),
    ],
  );
  const columns = el(
    "div",
    { className: "framework-columns" },
    zone.frameworks.map((f) => frameworkColumn(zone, f.id, ctx)),
  );
  return el("section", { className: "zone zone2" }, [
    tray,
    columns,
    el("button", {
      className: "primary submit-matching",
      text: zone.submitted ? "Matching submitted" : "Submit matching",
      disabled: zone.submitted,
      onClick: () => ctx.dispatch({ kind: "submit_matching" }),
    }),
  ]);
}
