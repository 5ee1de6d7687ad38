import { beforeEach, describe, expect, it } from "vitest";

import { clearHandle, loadHandle, saveHandle } from "../src/storage";

beforeEach(() => {
  localStorage.clear();
});

describe("session persistence", () => {
  it("round-trips a handle", () => {
    saveHandle(localStorage, { sessionId: "s-1", token: "t-1" });
    expect(loadHandle(localStorage)).toEqual({ sessionId: "s-1", token: "t-1" });
  });

  it("returns null when nothing is stored", () => {
    expect(loadHandle(localStorage)).toBeNull();
  });

  it("treats unreadable entries as absent", () => {
    localStorage.setItem("govroom.session", "{not json");
    expect(loadHandle(localStorage)).toBeNull();
  });

  it("rejects entries with the wrong shape", () => {
    localStorage.setItem("govroom.session", JSON.stringify({ sessionId: 7 }));
    expect(loadHandle(localStorage)).toBeNull();
  });

  it("clears the stored handle", () => {
    saveHandle(localStorage, { sessionId: "s-1", token: "t-1" });
    clearHandle(localStorage);
    expect(loadHandle(localStorage)).toBeNull();
  });
});
