// WebSocket session: hello/welcome handshake, then a snapshot stream.
// The socket factory is injectable so tests can drive the handshake with
// a scripted fake.

import {
  CommandAction,
  SchemaError,
  Snapshot,
  Welcome,
  commandMessage,
  helloMessage,
  validateSnapshot,
  validateWelcome,
} from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(code?: number, reason?: string): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export interface SessionHandlers {
  onWelcome(welcome: Welcome): void;
  onSnapshot(snapshot: Snapshot): void;
  onError(reason: string): void;
  onClose(): void;
}

export class Connection {
  private socket: SocketLike;
  private welcomed = false;
  closed = false;

  constructor(
    url: string,
    private readonly name: string,
    private readonly handlers: SessionHandlers,
    socketFactory: (url: string) => SocketLike = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {
    this.socket = socketFactory(url);
    this.socket.onopen = () => this.socket.send(helloMessage(this.name));
    this.socket.onmessage = (ev) => this.handleMessage(ev.data);
    this.socket.onerror = () => this.handlers.onError("connection failed");
    this.socket.onclose = () => {
      this.closed = true;
      this.handlers.onClose();
    };
  }

  private handleMessage(data: unknown): void {
    let raw: unknown;
    try {
      raw = JSON.parse(typeof data === "string" ? data : String(data));
    } catch {
      this.fail("malformed frame: not JSON");
      return;
    }
    const type = (raw as { type?: unknown })?.type;
    try {
      if (!this.welcomed) {
        if (type === "error") {
          this.fail(`server error: ${(raw as { reason?: string }).reason ?? "unknown"}`);
          return;
        }
        this.handlers.onWelcome(validateWelcome(raw));
        this.welcomed = true;
        return;
      }
      if (type === "snapshot") {
        this.handlers.onSnapshot(validateSnapshot(raw));
      } else if (type === "error") {
        this.fail(`server error: ${(raw as { reason?: string }).reason ?? "unknown"}`);
      } else if (type === "bye") {
        this.socket.close();
      } else {
        this.fail(`unexpected message type ${String(type)}`);
      }
    } catch (err) {
      if (err instanceof SchemaError) {
        // schema violations close the session cleanly rather than
        // rendering unvalidated data
        this.fail(`schema violation: ${err.message}`);
      } else {
        throw err;
      }
    }
  }

  private fail(reason: string): void {
    this.handlers.onError(reason);
    this.socket.close();
  }

  sendCommand(command: CommandAction): void {
    if (!this.closed && this.welcomed) {
      this.socket.send(commandMessage(command));
    }
  }

  leave(): void {
    if (!this.closed) {
      this.socket.send(JSON.stringify({ type: "bye" }));
      this.socket.close();
    }
  }
}
