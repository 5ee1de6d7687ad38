// Final screen for completed and expired sessions: results plus the
// post-game survey. Survey posts are idempotent server-side, so repeat
// submissions are harmless.

import type { PlayerView } from "../types";
import { el, type RenderContext } from "./common";

const QUESTIONS: Array<{ id: string; label: string }> = [
  { id: "engagement", label: "How engaging was the room?" },
  { id: "satisfaction", label: "How satisfied are you overall?" },
  { id: "difficulty", label: "How difficult did it feel?" },
];

function surveyForm(ctx: RenderContext): HTMLElement {
  const rows = QUESTIONS.map((question) => {
    const select = el("select", { dataset: { question: question.id } }) as HTMLSelectElement;
    for (let rating = 1; rating <= 5; rating++) {
      const option = document.createElement("option");
      option.value = String(rating);
      option.textContent = String(rating);
      select.append(option);
    }
    select.value = "5";
    return el("label", { className: "survey-row" }, [
      el("span", { text: `${question.label} (1 to 5)` }),
      select,
    ]);
  });

  const form = el("div", { className: "survey" }, [
    el("h3", { text: "Tell us how it went" }),
    ...rows,
    el("button", {
      className: "primary survey-submit",
      text: "Send ratings",
      onClick: () => {
        for (const select of form.querySelectorAll<HTMLSelectElement>("select[data-question]")) {
          ctx.submitSurvey(select.dataset.question ?? "", Number(select.value));
        }
      },
    }),
  ]);
  return form;
}

export function renderTerminal(view: PlayerView, ctx: RenderContext): HTMLElement {
  const completed = view.phase === "completed";
  const rows = view.zone_results.map((r) =>
    el("tr", {}, [
      el("td", { text: `Zone ${r.zone_index + 1}` }),
      el("td", { text: r.zone_score.toFixed(3) }),
      el("td", { text: r.passed ? "passed" : "failed" }),
      el("td", { text: `${Math.round(r.duration)}s` }),
      el("td", { text: String(r.hints) }),
    ]),
  );
  const table = el("table", { className: "results-table" }, [
    el("thead", {}, [
      el("tr", {}, ["Zone", "Score", "Outcome", "Time", "Hints"].map((h) => el("th", { text: h }))),
    ]),
    el("tbody", {}, rows),
  ]);

  return el("section", { className: "terminal" }, [
    el("h2", { text: completed ? "Room cleared" : "Time expired" }),
    completed && view.total_score !== null
      ? el("p", { className: "total-score", text: `Total score: ${view.total_score.toFixed(3)}` })
      : el("p", {
          className: "muted",
          text: "The session ended before every zone was cleared.",
        }),
    table,
    surveyForm(ctx),
    el("button", {
      className: "new-session",
      text: "Start a new session",
      onClick: () => ctx.resetSession(),
    }),
  ]);
}
