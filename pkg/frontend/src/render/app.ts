// Phase-driven routing: the screen is a pure function of the latest view
// plus local drafts, so any frame (including the snapshot after a refresh
// or reconnect) reconstructs it entirely.

import type { AppState } from "../store";
import { el, header, hintPanel, noticeBar, type RenderContext } from "./common";
import { renderComposer } from "./composer";
import { renderLobby } from "./lobby";
import { renderMatching } from "./matching";
import { renderMaze } from "./maze";
import { renderTerminal } from "./terminal";

export function renderApp(root: HTMLElement, state: AppState, ctx: RenderContext): void {
  root.replaceChildren();
  const view = state.view;
  if (!view) {
    root.append(el("p", { className: "muted loading", text: "Connecting to your session..." }));
    return;
  }

  root.append(header(view, state.connection));
  const notice = noticeBar(state.notice);
  if (notice) root.append(notice);

  let screen: HTMLElement;
  let hints: HTMLElement | null = null;
  switch (view.phase) {
    case "lobby":
      screen = renderLobby(view, ctx);
      break;
    case "zone1":
      screen = view.zones.zone1
        ? renderMaze(view.zones.zone1, ctx)
        : el("p", { className: "muted", text: "Loading zone..." });
      hints = hintPanel(view, 0, ctx);
      break;
    case "zone2":
      screen = view.zones.zone2
        ? renderMatching(view.zones.zone2, ctx)
        : el("p", { className: "muted", text: "Loading zone..." });
      hints = hintPanel(view, 1, ctx);
      break;
    case "zone3":
      screen = view.zones.zone3
        ? renderComposer(view.zones.zone3, ctx)
        : el("p", { className: "muted", text: "Loading zone..." });
      hints = hintPanel(view, 2, ctx);
      break;
    default:
      screen = renderTerminal(view, ctx);
  }

  const content = el("main", { className: "content" }, [screen]);
  if (hints) content.append(hints);
  root.append(content);
}
