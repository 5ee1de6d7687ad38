// Session handle persistence so a page refresh rejoins the same session.

import type { SessionHandle } from "./api";

const KEY = "govroom.session";

export function saveHandle(storage: Storage, handle: SessionHandle): void {
  storage.setItem(KEY, JSON.stringify(handle));
}

export function loadHandle(storage: Storage): SessionHandle | null {
  const raw = storage.getItem(KEY);
  if (raw === null) return null;
  try {
    const parsed = JSON.parse(raw);
    if (typeof parsed?.sessionId === "string" && typeof parsed?.token === "string") {
      return { sessionId: parsed.sessionId, token: parsed.token };
    }
  } catch {
    // unreadable entries are treated as absent
  }
  return null;
}

export function clearHandle(storage: Storage): void {
  storage.removeItem(KEY);
}
