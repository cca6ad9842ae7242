// Fixture transcripts recorded from a real server session (same seed and
// command schedule as the headless run that produced them).

import raw from "./fixtures/transcript.json";
import { Snapshot, Welcome, validateSnapshot, validateWelcome } from "../src/protocol.js";

export interface Transcript {
  welcome: Welcome;
  snapshots: Snapshot[];
}

function load(name: "duel" | "patrol"): Transcript {
  const entry = (raw as Record<string, { welcome: unknown; snapshots: unknown[] }>)[name];
  return {
    welcome: validateWelcome(entry.welcome),
    snapshots: entry.snapshots.map(validateSnapshot),
  };
}

export const duel = load("duel");
export const patrol = load("patrol");

export function rawDuel(): { welcome: unknown; snapshots: unknown[] } {
  return (raw as Record<string, { welcome: unknown; snapshots: unknown[] }>)["duel"];
}
