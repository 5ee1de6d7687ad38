// Single app store: latest server view plus in-flight local edits.
// Every score, gap, and phase shown in the UI originates from a frame;
// the drafts below only smooth over the round trip to the gateway.

import type { PlayerView, StreamFrame } from "./types";

export type Connection = "connecting" | "live" | "lost" | "closed";

export interface AppState {
  view: PlayerView | null;
  connection: Connection;
  notice: string | null;
  /** Local ordering of flagged risks in the zone 1 rank panel, pre-submit. */
  draftRanking: string[] | null;
  /** Optimistic zone 3 composition order, reconciled on the next view. */
  draftSelected: string[] | null;
}

export class Store {
  state: AppState = {
    view: null,
    connection: "connecting",
    notice: null,
    draftRanking: null,
    draftSelected: null,
  };

  private listeners: Array<() => void> = [];

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  setConnection(connection: Connection): void {
    if (this.state.connection === connection) return;
    this.state = { ...this.state, connection };
    this.emit();
  }

  setNotice(notice: string | null): void {
    this.state = { ...this.state, notice };
    this.emit();
  }

  /** Installs a server view. The server's composition order always wins. */
  applyView(view: PlayerView): void {
    const zone1 = view.zones.zone1;
    const keepRanking = zone1 !== undefined && !zone1.submitted;
    this.state = {
      ...this.state,
      view,
      draftSelected: null,
      draftRanking: keepRanking ? this.state.draftRanking : null,
    };
    this.emit();
  }

  applyFrame(frame: StreamFrame): void {
    this.applyView(frame.view);
    if (frame.type === "terminal") this.setConnection("closed");
  }

  /** Snap back to server truth, e.g. after a rejected optimistic edit. */
  clearDrafts(): void {
    this.state = { ...this.state, draftRanking: this.state.draftRanking, draftSelected: null };
    this.emit();
  }

  setDraftRanking(ids: string[]): void {
    this.state = { ...this.state, draftRanking: [...ids] };
    this.emit();
  }

  setDraftSelected(ids: string[]): void {
    this.state = { ...this.state, draftSelected: [...ids] };
    this.emit();
  }

  /** Rank-panel order: the draft where still eligible, new flags appended. */
  rankingOrder(): string[] {
    const zone1 = this.state.view?.zones.zone1;
    if (!zone1) return [];
    const eligible = Object.keys(zone1.flags).filter((id) => zone1.flags[id]);
    const draft = this.state.draftRanking ?? [];
    const kept = draft.filter((id) => eligible.includes(id));
    const added = eligible.filter((id) => !kept.includes(id));
    return [...kept, ...added];
  }

  /** Composer order: optimistic draft if one is in flight, else the server's. */
  selectedOrder(): string[] {
    const zone3 = this.state.view?.zones.zone3;
    if (!zone3) return [];
    return this.state.draftSelected ?? zone3.selected;
  }
}
