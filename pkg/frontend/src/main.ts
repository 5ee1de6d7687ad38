// Boot: rejoin the stored session if one exists (refresh resilience),
// otherwise offer the scenario catalog. All state flows in through the
// stream; actions go out through the REST endpoints.

import {
  createSession,
  fetchView,
  GatewayError,
  listScenarios,
  postAction,
  postSurvey,
  streamUrl,
  type SessionHandle,
} from "./api";
import { renderApp } from "./render/app";
import { el, type RenderContext } from "./render/common";
import { clearHandle, loadHandle, saveHandle } from "./storage";
import { Store } from "./store";
import { openStream } from "./stream";
import { Countdown, formatClock } from "./timer";
import type { PlayerAction } from "./types";

const BASE = "";
const root = document.getElementById("app")!;
const store = new Store();
const countdown = new Countdown();

let handle: SessionHandle | null = null;
let closeStream: (() => void) | null = null;
let timeUpNoticeShown = false;

function feedbackNotice(feedback: Record<string, unknown>): string | null {
  if (typeof feedback.text === "string") {
    return `Hint: ${feedback.text}`;
  }
  if (typeof feedback.zone_score === "number") {
    const passed = feedback.passed === true;
    return passed
      ? `Zone cleared with score ${feedback.zone_score.toFixed(3)}.`
      : `Submission scored ${feedback.zone_score.toFixed(3)}; below the bar, and the zone is now locked.`;
  }
  return null;
}

const ctx: RenderContext = {
  store,

  dispatch(action: PlayerAction): void {
    if (!handle) return;
    postAction(BASE, handle, action)
      .then((result) => {
        store.setNotice(feedbackNotice(result.feedback));
        store.applyView(result.view);
      })
      .catch((err) => {
        store.clearDrafts();
        if (err instanceof GatewayError) {
          store.setNotice(err.message);
          if (err.status === 410 && handle) {
            fetchView(BASE, handle).then((view) => store.applyView(view)).catch(() => {});
          }
        } else {
          store.setNotice("The request failed; check your connection and retry.");
        }
      });
  },

  submitSurvey(question: string, rating: number): void {
    if (!handle) return;
    postSurvey(BASE, handle, question, rating)
      .then(() => store.setNotice("Thanks for the feedback."))
      .catch((err) => {
        store.setNotice(
          err instanceof GatewayError ? err.message : "Sending the survey failed; please retry.",
        );
      });
  },

  resetSession(): void {
    closeStream?.();
    clearHandle(localStorage);
    window.location.reload();
  },
};

function attach(h: SessionHandle): void {
  closeStream?.();
  closeStream = openStream(streamUrl(BASE, h), {
    onFrame: (frame) => store.applyFrame(frame),
    onStatus: (status) => store.setConnection(status),
  });
}

async function startSession(scenarioId: string): Promise<void> {
  const created = await createSession(BASE, scenarioId);
  handle = created.handle;
  saveHandle(localStorage, handle);
  store.applyView(created.view);
  attach(handle);
}

async function showPicker(): Promise<void> {
  const scenarios = await listScenarios(BASE);
  root.replaceChildren(
    el("section", { className: "picker" }, [
      el("h1", { text: "Governance Escape Room" }),
      el("p", { className: "muted", text: "Pick a scenario to start a session." }),
      ...scenarios.map((s) =>
        el("button", { className: "scenario-choice", dataset: { scenarioId: s.id } }, [
          el("strong", { text: s.title }),
          el("span", { className: "muted", text: ` ${formatClock(s.time_limit)}` }),
        ]),
      ),
    ]),
  );
  for (const button of root.querySelectorAll<HTMLElement>(".scenario-choice")) {
    button.addEventListener("click", () => {
      const id = button.dataset.scenarioId ?? "";
      startSession(id).catch((err) => {
        store.setNotice(err instanceof GatewayError ? err.message : "Could not start a session.");
      });
    });
  }
}

store.subscribe(() => {
  const view = store.state.view;
  if (view) countdown.sync(view.remaining_seconds);
  renderApp(root, store.state, ctx);
});

setInterval(() => {
  const view = store.state.view;
  if (!view) return;
  const remaining = countdown.read();
  const clock = root.querySelector<HTMLElement>("[data-role=countdown]");
  if (clock) clock.textContent = formatClock(remaining);
  if (remaining <= 0 && !timeUpNoticeShown && view.phase.startsWith("zone")) {
    timeUpNoticeShown = true;
    store.setNotice("Time is up. The session will close on your next action.");
  }
}, 1000);

async function boot(): Promise<void> {
  const stored = loadHandle(localStorage);
  if (stored) {
    try {
      const view = await fetchView(BASE, stored);
      handle = stored;
      store.applyView(view);
      attach(stored);
      return;
    } catch {
      clearHandle(localStorage); // stale or foreign session; start over
    }
  }
  await showPicker();
}

boot().catch(() => {
  root.replaceChildren(
    el("p", { className: "muted", text: "The game service is unreachable. Refresh to retry." }),
  );
});
