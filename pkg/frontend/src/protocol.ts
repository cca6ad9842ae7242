// Message types for the wargrid WebSocket protocol, with runtime guards.
// The client renders only validated snapshot data and never extrapolates.

export interface Position {
  x: number;
  y: number;
}

export interface UtilityReadout {
  options: string[];
  scores: number[];
  probabilities: number[];
  chosen: number;
}

export interface BotReadout {
  position: Position;
  mode: "patrol" | "active_search" | "attack";
  force: number;
  health: number;
  ammo: number;
  magazine: number;
  utilities: UtilityReadout | null;
}

export interface Snapshot {
  type: "snapshot";
  tick: number;
  bot: BotReadout;
  intruder: { position: Position; health: number };
  events: Array<Record<string, unknown>>;
}

export interface Welcome {
  type: "welcome";
  session: string;
  map: { width: number; height: number; rows: string[] };
  config: {
    seed: number;
    ticks: number;
    tick_rate: number;
    t_active: number;
    t_passive: number;
    force_ceiling: number;
  };
}

export type CommandAction =
  | { action: "move"; direction: "N" | "S" | "E" | "W" }
  | { action: "fire" }
  | { action: "hide" }
  | { action: "wait" };

export class SchemaError extends Error {}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null;
}

function requireNumber(obj: Record<string, unknown>, key: string, where: string): number {
  const value = obj[key];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new SchemaError(`${where}.${key} must be a finite number`);
  }
  return value;
}

function requirePosition(value: unknown, where: string): Position {
  if (!isRecord(value)) throw new SchemaError(`${where} must be an object`);
  const x = requireNumber(value, "x", where);
  const y = requireNumber(value, "y", where);
  if (!Number.isInteger(x) || !Number.isInteger(y)) {
    throw new SchemaError(`${where} coordinates must be integers`);
  }
  return { x, y };
}

function requireUtilities(value: unknown): UtilityReadout | null {
  if (value === null || value === undefined) return null;
  if (!isRecord(value)) throw new SchemaError("bot.utilities must be an object or null");
  const options = value.options;
  const scores = value.scores;
  const probabilities = value.probabilities;
  if (!Array.isArray(options) || !options.every((o) => typeof o === "string")) {
    throw new SchemaError("bot.utilities.options must be strings");
  }
  if (!Array.isArray(scores) || !scores.every((s) => typeof s === "number")) {
    throw new SchemaError("bot.utilities.scores must be numbers");
  }
  if (!Array.isArray(probabilities) || !probabilities.every((p) => typeof p === "number")) {
    throw new SchemaError("bot.utilities.probabilities must be numbers");
  }
  const chosen = requireNumber(value, "chosen", "bot.utilities");
  if (options.length !== scores.length || options.length !== probabilities.length) {
    throw new SchemaError("bot.utilities arrays must share one length");
  }
  if (chosen < 0 || chosen >= options.length) {
    throw new SchemaError("bot.utilities.chosen is out of range");
  }
  return { options, scores, probabilities, chosen };
}

export function validateSnapshot(raw: unknown): Snapshot {
  if (!isRecord(raw) || raw.type !== "snapshot") {
    throw new SchemaError("not a snapshot message");
  }
  const tick = requireNumber(raw, "tick", "snapshot");
  if (!isRecord(raw.bot)) throw new SchemaError("snapshot.bot must be an object");
  const bot = raw.bot;
  const mode = bot.mode;
  if (mode !== "patrol" && mode !== "active_search" && mode !== "attack") {
    throw new SchemaError(`unknown bot mode ${String(mode)}`);
  }
  if (!isRecord(raw.intruder)) throw new SchemaError("snapshot.intruder must be an object");
  const events = Array.isArray(raw.events) ? (raw.events as Array<Record<string, unknown>>) : null;
  if (events === null) throw new SchemaError("snapshot.events must be an array");
  return {
    type: "snapshot",
    tick,
    bot: {
      position: requirePosition(bot.position, "bot.position"),
      mode,
      force: requireNumber(bot, "force", "bot"),
      health: requireNumber(bot, "health", "bot"),
      ammo: requireNumber(bot, "ammo", "bot"),
      magazine: requireNumber(bot, "magazine", "bot"),
      utilities: requireUtilities(bot.utilities),
    },
    intruder: {
      position: requirePosition(raw.intruder.position, "intruder.position"),
      health: requireNumber(raw.intruder, "health", "intruder"),
    },
    events,
  };
}

export function validateWelcome(raw: unknown): Welcome {
  if (!isRecord(raw) || raw.type !== "welcome") {
    throw new SchemaError("not a welcome message");
  }
  if (typeof raw.session !== "string") throw new SchemaError("welcome.session must be a string");
  if (!isRecord(raw.map) || !Array.isArray(raw.map.rows)) {
    throw new SchemaError("welcome.map must carry rows");
  }
  if (!isRecord(raw.config)) throw new SchemaError("welcome.config must be an object");
  const cfg = raw.config;
  return {
    type: "welcome",
    session: raw.session,
    map: {
      width: requireNumber(raw.map, "width", "map"),
      height: requireNumber(raw.map, "height", "map"),
      rows: raw.map.rows as string[],
    },
    config: {
      seed: requireNumber(cfg, "seed", "config"),
      ticks: requireNumber(cfg, "ticks", "config"),
      tick_rate: requireNumber(cfg, "tick_rate", "config"),
      t_active: requireNumber(cfg, "t_active", "config"),
      t_passive: requireNumber(cfg, "t_passive", "config"),
      force_ceiling: requireNumber(cfg, "force_ceiling", "config"),
    },
  };
}

export function commandMessage(action: CommandAction): string {
  return JSON.stringify({ type: "command", ...action });
}

export function helloMessage(name: string): string {
  return JSON.stringify({ type: "hello", name });
}
