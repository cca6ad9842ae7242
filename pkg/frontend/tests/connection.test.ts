// Handshake and session flow against a scripted fake socket.

import { describe, expect, it } from "vitest";

import { Connection, SocketLike } from "../src/connection.js";
import type { Snapshot, Welcome } from "../src/protocol.js";
import { rawDuel } from "./fixtures.js";

class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    if (!this.closed) {
      this.closed = true;
      this.onclose?.();
    }
  }

  open(): void {
    this.onopen?.();
  }

  deliver(message: unknown): void {
    this.onmessage?.({ data: JSON.stringify(message) });
  }
}

function harness() {
  const socket = new FakeSocket();
  const seen: { welcome: Welcome | null; snapshots: Snapshot[]; errors: string[]; closed: boolean } =
    { welcome: null, snapshots: [], errors: [], closed: false };
  const connection = new Connection(
    "ws://example/ws",
    "operator",
    {
      onWelcome: (w) => (seen.welcome = w),
      onSnapshot: (s) => seen.snapshots.push(s),
      onError: (reason) => seen.errors.push(reason),
      onClose: () => (seen.closed = true),
    },
    () => socket,
  );
  return { socket, seen, connection };
}

describe("handshake", () => {
  it("sends hello on open and accepts the welcome", () => {
    const { socket, seen } = harness();
    socket.open();
    expect(JSON.parse(socket.sent[0])).toEqual({ type: "hello", name: "operator" });
    socket.deliver(rawDuel().welcome);
    expect(seen.welcome?.session).toBe("fixture1");
    expect(seen.errors).toEqual([]);
  });

  it("renders the map from the welcome payload", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.deliver(rawDuel().welcome);
    expect(seen.welcome?.map.rows.length).toBe(seen.welcome?.map.height);
  });

  it("a server error before welcome surfaces as a banner-able error", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.deliver({ type: "error", reason: "handshake must be hello" });
    expect(seen.errors[0]).toContain("handshake");
    expect(socket.closed).toBe(true);
  });
});

describe("snapshot stream", () => {
  it("delivers validated snapshots in order", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.deliver(rawDuel().welcome);
    for (const snap of rawDuel().snapshots.slice(0, 5)) socket.deliver(snap);
    expect(seen.snapshots.map((s) => s.tick)).toEqual([1, 2, 3, 4, 5]);
  });

  it("closes cleanly on a malformed snapshot (schema violation)", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.deliver(rawDuel().welcome);
    const broken = JSON.parse(JSON.stringify(rawDuel().snapshots[0]));
    delete broken.bot.magazine;
    socket.deliver(broken);
    expect(seen.errors[0]).toContain("schema violation");
    expect(socket.closed).toBe(true);
    expect(seen.closed).toBe(true);
  });

  it("closes on non-JSON frames without crashing", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.onmessage?.({ data: "{nope" });
    expect(seen.errors[0]).toContain("not JSON");
  });

  it("a bye message ends the session", () => {
    const { socket, seen } = harness();
    socket.open();
    socket.deliver(rawDuel().welcome);
    socket.deliver({ type: "bye", reason: "tick budget reached" });
    expect(socket.closed).toBe(true);
    expect(seen.closed).toBe(true);
    expect(seen.errors).toEqual([]);
  });
});

describe("outbound commands", () => {
  it("sends commands only after the welcome", () => {
    const { socket, connection } = harness();
    socket.open();
    connection.sendCommand({ action: "fire" });
    expect(socket.sent.length).toBe(1); // just the hello
    socket.deliver(rawDuel().welcome);
    connection.sendCommand({ action: "fire" });
    expect(JSON.parse(socket.sent[1])).toEqual({ type: "command", action: "fire" });
  });

  it("stops sending after close", () => {
    const { socket, connection } = harness();
    socket.open();
    socket.deliver(rawDuel().welcome);
    socket.close();
    connection.sendCommand({ action: "fire" });
    expect(socket.sent.length).toBe(1);
  });
});
