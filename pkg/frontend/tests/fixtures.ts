// Canned player views shaped exactly like the gateway's JSON, plus a
// recording render context.

import type { RenderContext } from "../src/render/common";
import { Store } from "../src/store";
import type {
  PlayerAction,
  PlayerView,
  Zone1View,
  Zone2View,
  Zone3View,
} from "../src/types";

export function zone1View(overrides: Partial<Zone1View> = {}): Zone1View {
  return {
    current_node: "room0",
    entry: "hall",
    exit: "out",
    visited: ["hall", "room0"],
    nodes: {
      hall: { description: "the hall", encounter: null },
      room0: {
        description: "server room",
        encounter: {
          id: "r_hi",
          title: "Phishing wave",
          description: "Credential phishing against staff.",
          likelihood: 4,
          impact: 5,
        },
      },
    },
    exits: { hall: ["room0", "room1", "out"], room0: ["hall"] },
    flags: { r_hi: true },
    ranking: null,
    submitted: false,
    ...overrides,
  };
}

export function zone2View(overrides: Partial<Zone2View> = {}): Zone2View {
  return {
    frameworks: [
      { id: "fw_a", name: "Framework A", description: "first" },
      { id: "fw_b", name: "Framework B", description: "second" },
    ],
    controls: [
      { id: "c_one", text: "Control one", context_tag: "ops" },
      { id: "c_both", text: "Control both", context_tag: null },
    ],
    assignments: {},
    submitted: false,
    ...overrides,
  };
}

export function zone3View(overrides: Partial<Zone3View> = {}): Zone3View {
  return {
    elements: [
      { id: "e_scope", text: "Scope covers all sites.", category: "scope" },
      { id: "e_roles", text: "Roles are assigned.", category: "roles_responsibilities" },
      { id: "e_comp", text: "Compliance is tracked.", category: "compliance" },
    ],
    selected: ["e_scope"],
    submitted: false,
    gap_report: { gaps: [], complete: true },
    ...overrides,
  };
}

export function makeView(overrides: Partial<PlayerView> = {}): PlayerView {
  return {
    session_id: "s-test",
    scenario: {
      id: "test-room",
      title: "Test Room",
      company_profile: "A test company.",
      time_limit: 2700,
    },
    phase: "lobby",
    remaining_seconds: 2700,
    zone_results: [],
    total_score: null,
    hints: {},
    zones: {},
    ...overrides,
  };
}

export interface TestHarness {
  store: Store;
  ctx: RenderContext;
  actions: PlayerAction[];
  surveys: Array<[string, number]>;
  resets: number;
}

export function harness(view?: PlayerView): TestHarness {
  const store = new Store();
  if (view) store.applyView(view);
  const actions: PlayerAction[] = [];
  const surveys: Array<[string, number]> = [];
  const state = { resets: 0 };
  const ctx: RenderContext = {
    store,
    dispatch: (action) => actions.push(action),
    submitSurvey: (question, rating) => surveys.push([question, rating]),
    resetSession: () => {
      state.resets += 1;
    },
  };
  return {
    store,
    ctx,
    actions,
    surveys,
    get resets() {
      return state.resets;
    },
  };
}

/** Minimal stand-in for a DragEvent carrying one text/plain payload. */
export function dragEvent(payload: string): DragEvent {
  return {
    preventDefault: () => {},
    dataTransfer: {
      getData: () => payload,
      setData: () => {},
      effectAllowed: "move",
      dropEffect: "move",
    },
  } as unknown as DragEvent;
}
