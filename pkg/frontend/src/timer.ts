// Countdown bookkeeping between server frames.

/** "MM:SS", growing to "H:MM:SS" past an hour. Floors at 00:00. */
export function formatClock(seconds: number): string {
  const total = Math.max(0, Math.floor(seconds));
  const h = Math.floor(total / 3600);
  const m = Math.floor((total % 3600) / 60);
  const s = total % 60;
  const mm = String(m).padStart(2, "0");
  const ss = String(s).padStart(2, "0");
  return h > 0 ? `${h}:${mm}:${ss}` : `${mm}:${ss}`;
}

/**
 * Tracks remaining time from the latest frame and extrapolates locally
 * between frames. The server value always wins on the next sync.
 */
export class Countdown {
  private remaining = 0;
  private syncedAt = 0;

  sync(remainingSeconds: number, at: number = Date.now()): void {
    this.remaining = remainingSeconds;
    this.syncedAt = at;
  }

  read(at: number = Date.now()): number {
    const elapsed = (at - this.syncedAt) / 1000;
    return Math.max(0, this.remaining - elapsed);
  }
}
