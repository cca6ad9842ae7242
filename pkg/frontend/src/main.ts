// Entry point: wire the connection, state, HUD, grid, and keyboard
// together. Configuration arrives via query parameters:
//   index.html?server=ws://127.0.0.1:8765/ws&name=operator

import { Connection } from "./connection.js";
import { buildHud, hideBanner, renderHud, showBanner } from "./hud.js";
import { InputManager } from "./input.js";
import { renderGrid, sizeCanvas } from "./render.js";
import { ClientState } from "./state.js";
import type { Welcome } from "./protocol.js";

function start(): void {
  const params = new URLSearchParams(window.location.search);
  const server = params.get("server") ?? "ws://127.0.0.1:8765/ws";
  const name = params.get("name") ?? "intruder";

  const root = document.getElementById("app");
  const canvas = document.getElementById("grid") as HTMLCanvasElement | null;
  if (!root || !canvas) throw new Error("missing #app or #grid");

  buildHud(root);
  const state = new ClientState();
  let welcome: Welcome | null = null;

  const connect = () => {
    showBanner(root, `connecting to ${server} ...`);
    const connection = new Connection(server, name, {
      onWelcome(w) {
        welcome = w;
        state.welcome = w;
        state.status = "connected";
        hideBanner(root);
        sizeCanvas(canvas, w);
        renderGrid(canvas, w, state.latest);
      },
      onSnapshot(snapshot) {
        if (!state.acceptSnapshot(snapshot)) return; // stale frame discarded
        input.windowClosed();
        renderHud(root, state);
        if (welcome) renderGrid(canvas, welcome, snapshot);
      },
      onError(reason) {
        state.status = "error";
        input.setEnabled(false);
        showBanner(root, `${reason} — press R to retry`);
      },
      onClose() {
        if (state.status !== "error") {
          state.status = "closed";
          showBanner(root, "session closed — press R to retry");
        }
        input.setEnabled(false);
      },
    });
    input.setEnabled(true);
    return connection;
  };

  const input = new InputManager((command) => connection.sendCommand(command));
  let connection = connect();

  window.addEventListener("keydown", (ev) => {
    if (ev.code === "KeyR" && (state.status === "error" || state.status === "closed")) {
      state.status = "connecting";
      connection = connect();
      return;
    }
    if (input.handleKey(ev.code)) ev.preventDefault();
  });

  window.addEventListener("beforeunload", () => connection.leave());
}

start();
