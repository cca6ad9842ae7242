// Client-side state: the latest validated snapshot plus HUD toggles.
// Rendering is a pure function of this; no simulation happens here.

import type { Snapshot, Welcome } from "./protocol.js";

export const FORCE_HISTORY_CAPACITY = 600;

export class ForceHistory {
  private samples: Array<{ tick: number; force: number }> = [];

  push(tick: number, force: number): boolean {
    const last = this.samples[this.samples.length - 1];
    if (last !== undefined && tick <= last.tick) {
      return false; // ticks must be strictly increasing
    }
    this.samples.push({ tick, force });
    if (this.samples.length > FORCE_HISTORY_CAPACITY) {
      this.samples.shift();
    }
    return true;
  }

  get length(): number {
    return this.samples.length;
  }

  entries(): ReadonlyArray<{ tick: number; force: number }> {
    return this.samples;
  }
}

export type ConnectionStatus = "connecting" | "connected" | "closed" | "error";

export class ClientState {
  status: ConnectionStatus = "connecting";
  welcome: Welcome | null = null;
  latest: Snapshot | null = null;
  history = new ForceHistory();
  showUtilities = true;
  showForceHistory = true;
  schemaViolations: string[] = [];

  /** Accept a validated snapshot; stale ticks are discarded and logged. */
  acceptSnapshot(snapshot: Snapshot): boolean {
    if (this.latest !== null && snapshot.tick <= this.latest.tick) {
      this.schemaViolations.push(
        `tick regression: got ${snapshot.tick} after ${this.latest.tick}`,
      );
      return false;
    }
    this.latest = snapshot;
    this.history.push(snapshot.tick, snapshot.bot.force);
    return true;
  }
}
