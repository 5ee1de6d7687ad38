// Mirrors of the gateway's player-safe JSON shapes. Everything rendered
// comes from these; the client never receives or stores answer-key data.

export type Phase = "lobby" | "zone1" | "zone2" | "zone3" | "completed" | "expired";

export interface ScenarioInfo {
  id: string;
  title: string;
  company_profile: string;
  time_limit: number;
}

export interface EncounterCard {
  id: string;
  title: string;
  description: string;
  likelihood: number;
  impact: number;
}

export interface MazeNodeView {
  description: string;
  encounter: EncounterCard | null;
}

export interface Zone1View {
  current_node: string;
  entry: string;
  exit: string;
  visited: string[];
  nodes: Record<string, MazeNodeView>;
  exits: Record<string, string[]>;
  flags: Record<string, boolean>;
  ranking: string[] | null;
  submitted: boolean;
}

export interface FrameworkView {
  id: string;
  name: string;
  description: string;
}

export interface ControlView {
  id: string;
  text: string;
  context_tag: string | null;
}

export interface Zone2View {
  frameworks: FrameworkView[];
  controls: ControlView[];
  assignments: Record<string, string[]>;
  submitted: boolean;
}

export interface ElementView {
  id: string;
  text: string;
  category: string;
}

export interface GapView {
  rule_id: string;
  kind: string;
  message: string;
  targets: string[];
  blocking: boolean;
}

export interface GapReportView {
  gaps: GapView[];
  complete: boolean;
}

export interface Zone3View {
  elements: ElementView[];
  selected: string[];
  submitted: boolean;
  gap_report: GapReportView;
}

export interface ZoneResultView {
  zone_index: number;
  zone_score: number;
  passed: boolean;
  duration: number;
  attempts: number;
  hints: number;
}

export interface HintView {
  zone: number;
  total_tiers: number;
  revealed: string[];
}

export interface PlayerView {
  session_id: string;
  scenario: ScenarioInfo;
  phase: Phase;
  remaining_seconds: number;
  zone_results: ZoneResultView[];
  total_score: number | null;
  hints: Record<string, HintView>;
  zones: {
    zone1?: Zone1View;
    zone2?: Zone2View;
    zone3?: Zone3View;
  };
}

export type StreamFrame = {
  type: "snapshot" | "update" | "terminal";
  view: PlayerView;
};

// Player inputs, matching the gateway's action schema.
export type PlayerAction =
  | { kind: "start" }
  | { kind: "move"; to: string }
  | { kind: "flag_risk"; encounter: string; decision: boolean }
  | { kind: "submit_ranking"; ranking: string[] }
  | { kind: "assign"; control: string; frameworks: string[] }
  | { kind: "submit_matching" }
  | { kind: "edit_policy"; op: "add"; element: string; position: number }
  | { kind: "edit_policy"; op: "remove"; element: string }
  | { kind: "edit_policy"; op: "reorder"; element: string; position: number }
  | { kind: "submit_policy" }
  | { kind: "request_hint"; puzzle: string };
