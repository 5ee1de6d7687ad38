// Pre-game briefing screen.

import type { PlayerView } from "../types";
import { el, type RenderContext } from "./common";
import { formatClock } from "../timer";

export function renderLobby(view: PlayerView, ctx: RenderContext): HTMLElement {
  return el("section", { className: "lobby" }, [
    el("h2", { text: "Briefing" }),
    el("p", { className: "company-profile", text: view.scenario.company_profile }),
    el("p", {
      className: "lobby-rules",
      text:
        `You have ${formatClock(view.scenario.time_limit)} to clear three zones: ` +
        "identify and prioritize risks in the facility maze, match controls to " +
        "their frameworks, then compose a governance policy with no gaps. " +
        "Each zone allows a single graded submission.",
    }),
    el("button", {
      className: "primary start-button",
      text: "Enter the room",
      onClick: () => ctx.dispatch({ kind: "start" }),
    }),
  ]);
}
