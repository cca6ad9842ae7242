// Keyboard mapping and per-tick-window command coalescing.
// Arrow keys / WASD move, F fires, H hides, Space waits. At most one
// command leaves the client per tick window (a window closes when the
// next snapshot arrives), mirroring the server's latest-wins rule.

import type { CommandAction } from "./protocol.js";

const KEYMAP: Record<string, CommandAction> = {
  ArrowUp: { action: "move", direction: "N" },
  ArrowDown: { action: "move", direction: "S" },
  ArrowRight: { action: "move", direction: "E" },
  ArrowLeft: { action: "move", direction: "W" },
  KeyW: { action: "move", direction: "N" },
  KeyS: { action: "move", direction: "S" },
  KeyD: { action: "move", direction: "E" },
  KeyA: { action: "move", direction: "W" },
  KeyF: { action: "fire" },
  KeyH: { action: "hide" },
  Space: { action: "wait" },
};

export function commandForKey(code: string): CommandAction | null {
  return KEYMAP[code] ?? null;
}

export class InputManager {
  private sentThisWindow = false;
  private enabled = true;

  constructor(
    private readonly send: (command: CommandAction) => void,
    private readonly onIgnored?: () => void,
  ) {}

  /** Returns true when the key produced an outbound command. */
  handleKey(code: string): boolean {
    const command = commandForKey(code);
    if (command === null) return false;
    if (!this.enabled || this.sentThisWindow) {
      this.onIgnored?.();
      return false;
    }
    this.sentThisWindow = true;
    this.send(command);
    return true;
  }

  /** A new snapshot opens the next tick window. */
  windowClosed(): void {
    this.sentThisWindow = false;
  }

  setEnabled(enabled: boolean): void {
    this.enabled = enabled;
  }
}
