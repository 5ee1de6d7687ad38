// Server-sent events wrapper. The browser's EventSource reconnects on its
// own after a drop, and the gateway answers every (re)attach with a fresh
// snapshot frame, so recovery needs no extra client logic.

import type { StreamFrame } from "./types";

export interface StreamCallbacks {
  onFrame(frame: StreamFrame): void;
  onStatus(status: "live" | "lost" | "closed"): void;
}

type EventSourceLike = {
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  readyState: number;
  close(): void;
};

type EventSourceFactory = new (url: string) => EventSourceLike;

const CLOSED = 2;

/** Opens the stream; returns a disposer. */
export function openStream(
  url: string,
  callbacks: StreamCallbacks,
  factory: EventSourceFactory = EventSource as unknown as EventSourceFactory,
): () => void {
  const source = new factory(url);

  source.onopen = () => callbacks.onStatus("live");
  source.onmessage = (event) => {
    let frame: StreamFrame;
    try {
      frame = JSON.parse(event.data);
    } catch {
      return; // keepalives and partial frames carry no state
    }
    callbacks.onFrame(frame);
    if (frame.type === "terminal") {
      source.close();
      callbacks.onStatus("closed");
    }
  };
  source.onerror = () => {
    callbacks.onStatus(source.readyState === CLOSED ? "closed" : "lost");
  };

  return () => source.close();
}
