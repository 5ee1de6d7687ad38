// Thin fetch client for the session gateway.

import type { PlayerAction, PlayerView, ScenarioInfo } from "./types";

export interface SessionHandle {
  sessionId: string;
  token: string;
}

export class GatewayError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "GatewayError";
  }
}

async function request(base: string, path: string, init: RequestInit = {}): Promise<any> {
  let response: Response;
  try {
    response = await fetch(base + path, init);
  } catch (err) {
    throw new GatewayError(0, "network-failure", String(err));
  }
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const error = body?.error ?? {};
    throw new GatewayError(
      response.status,
      error.code ?? "unknown-error",
      error.message ?? `request failed with status ${response.status}`,
    );
  }
  return body;
}

function authHeaders(handle: SessionHandle): Record<string, string> {
  return {
    Authorization: `Bearer ${handle.token}`,
    "Content-Type": "application/json",
  };
}

export async function listScenarios(base: string): Promise<ScenarioInfo[]> {
  const body = await request(base, "/api/scenarios");
  return body.scenarios;
}

export async function createSession(
  base: string,
  scenarioId: string,
): Promise<{ handle: SessionHandle; view: PlayerView }> {
  const body = await request(base, "/api/sessions", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ scenario_id: scenarioId }),
  });
  return {
    handle: { sessionId: body.session_id, token: body.token },
    view: body.view,
  };
}

export async function fetchView(base: string, handle: SessionHandle): Promise<PlayerView> {
  const body = await request(base, `/api/sessions/${handle.sessionId}`, {
    headers: authHeaders(handle),
  });
  return body.view;
}

export async function postAction(
  base: string,
  handle: SessionHandle,
  action: PlayerAction,
): Promise<{ view: PlayerView; feedback: Record<string, unknown> }> {
  return request(base, `/api/sessions/${handle.sessionId}/actions`, {
    method: "POST",
    headers: authHeaders(handle),
    body: JSON.stringify(action),
  });
}

export async function postSurvey(
  base: string,
  handle: SessionHandle,
  question: string,
  rating: number,
): Promise<boolean> {
  const body = await request(base, `/api/sessions/${handle.sessionId}/survey`, {
    method: "POST",
    headers: authHeaders(handle),
    body: JSON.stringify({ question, rating }),
  });
  return body.accepted === true;
}

/** Stream endpoint URL; EventSource cannot set headers, so auth rides the query. */
export function streamUrl(base: string, handle: SessionHandle): string {
  return `${base}/api/sessions/${handle.sessionId}/stream?token=${encodeURIComponent(handle.token)}`;
}
