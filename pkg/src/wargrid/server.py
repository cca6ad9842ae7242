"""WebSocket match service: a remote human plays the intruder.

One session per connection, server-authoritative. After the
hello/welcome handshake the server pushes exactly one snapshot per
simulated tick; the client sends commands, of which at most one is
applied per tick (latest wins, earlier ones logged as dropped). A
session driven by some command schedule produces the same event log as a
headless run scripted with that schedule, so online play replays offline.
"""

from __future__ import annotations

import asyncio
import uuid
from typing import Any

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .config import SimConfig
from .world import Event, World

_MOVE_DIRECTIONS = {"N": "move_n", "S": "move_s", "E": "move_e", "W": "move_w"}


class ProtocolError(ValueError):
    pass


def decode_command(message: dict) -> str:
    """Translate a command message into a script token, or raise."""
    action = message.get("action")
    if action == "move":
        direction = message.get("direction")
        if direction not in _MOVE_DIRECTIONS:
            raise ProtocolError(f"bad move direction {direction!r}")
        return _MOVE_DIRECTIONS[direction]
    if action in ("fire", "hide", "wait"):
        return action
    raise ProtocolError(f"unknown command action {action!r}")


class Session:
    """One world advanced tick by tick, with latest-wins command coalescing."""

    def __init__(self, config: SimConfig, session_id: str | None = None) -> None:
        self.id = session_id or uuid.uuid4().hex[:8]
        self.config = config
        self.world = World(config)
        self.pending: str | None = None
        self.dropped: list[str] = []
        self.finished = False

    def submit(self, command: str) -> None:
        if self.pending is not None:
            self.dropped.append(self.pending)
        self.pending = command

    def advance(self) -> dict:
        """Run one tick and build its snapshot."""
        upcoming = self.world.tick_index + 1
        start = len(self.world.log.records)
        for lost in self.dropped:
            self.world.log.append(upcoming, "command_dropped", command=lost)
        self.dropped.clear()
        command = self.pending or "wait"
        self.pending = None
        self.world.step(command)
        events = self.world.log.records[start:]  # includes dropped-command events
        if self.world.tick_index >= self.config.ticks:
            self.finished = True
        return build_snapshot(self.world, events)

    def command_schedule(self) -> dict[int, str]:
        """Applied commands by tick, reconstructable as an intruder script."""
        schedule: dict[int, str] = {}
        for event in self.world.log.records:
            if event.kind == "command":
                schedule[event.tick] = event.payload["command"]
        return schedule


def build_snapshot(world: World, events: list[Event]) -> dict:
    bot = world.bot
    decision = world.last_decision
    return {
        "type": "snapshot",
        "tick": world.tick_index,
        "bot": {
            "position": {"x": bot.position[0], "y": bot.position[1]},
            "mode": bot.force.mode.value,
            "force": bot.force.force,
            "health": bot.health,
            "ammo": bot.ammo_fraction,
            "magazine": bot.magazine_fraction,
            "utilities": None if decision is None else {
                "options": list(decision.options),
                "scores": [round(s, 9) for s in decision.scores],
                "probabilities": [round(p, 9) for p in decision.probabilities],
                "chosen": decision.chosen,
            },
        },
        "intruder": {
            "position": {"x": world.intruder.position[0], "y": world.intruder.position[1]},
            "health": world.intruder.health,
        },
        "events": [
            {"tick": e.tick, "kind": e.kind, **e.payload} for e in events
        ],
    }


def welcome_message(session: Session) -> dict:
    cfg = session.config
    return {
        "type": "welcome",
        "session": session.id,
        "map": {
            "width": cfg.width,
            "height": cfg.height,
            "rows": list(cfg.terrain),
        },
        "config": {
            "seed": cfg.seed,
            "ticks": cfg.ticks,
            "tick_rate": cfg.tick_rate,
            "t_active": cfg.force.t_active,
            "t_passive": cfg.force.t_passive,
            "force_ceiling": cfg.force.ceiling,
        },
    }


def create_app(
    config: SimConfig,
    pause_seconds: float = 30.0,
    ui_dir: str | None = None,
) -> FastAPI:
    """Build the service; each /ws connection gets its own session.

    ``ui_dir`` optionally mounts a built browser client at / so one
    process serves both the match socket and the page that speaks to it.
    """
    app = FastAPI(title="wargrid match service")
    app.state.sessions = {}  # session id -> Session

    async def send_error(ws: WebSocket, reason: str) -> None:
        await ws.send_json({"type": "error", "reason": reason})

    @app.websocket("/ws")
    async def match(ws: WebSocket) -> None:
        await ws.accept()
        try:
            hello = await ws.receive_json()
        except Exception:
            await send_error(ws, "malformed handshake: expected a hello object")
            await ws.close()
            return
        if not isinstance(hello, dict) or hello.get("type") != "hello" or "name" not in hello:
            await send_error(ws, "handshake must be {type: 'hello', name: ...}")
            await ws.close()
            return

        session = Session(config)
        app.state.sessions[session.id] = session
        await ws.send_json(welcome_message(session))

        async def ticker() -> None:
            interval = 1.0 / config.tick_rate
            while not session.finished:
                await asyncio.sleep(interval)
                snapshot = session.advance()
                await ws.send_json(snapshot)
            await ws.send_json({"type": "bye", "reason": "tick budget reached"})
            await ws.close()

        ticker_task = asyncio.create_task(ticker())
        paused = False
        try:
            while True:
                try:
                    message: Any = await ws.receive_json()
                except WebSocketDisconnect:
                    raise
                except Exception:
                    await send_error(ws, "malformed message: not a JSON object")
                    await ws.close()
                    return
                if not isinstance(message, dict) or "type" not in message:
                    await send_error(ws, "messages need a 'type' field")
                    await ws.close()
                    return
                if message["type"] == "bye":
                    await ws.send_json({"type": "bye", "reason": "client left"})
                    await ws.close()
                    return
                if message["type"] == "command":
                    try:
                        session.submit(decode_command(message))
                    except ProtocolError as exc:
                        await send_error(ws, str(exc))
                        await ws.close()
                        return
                    continue
                await send_error(ws, f"unknown message type {message['type']!r}")
                await ws.close()
                return
        except WebSocketDisconnect:
            paused = True
        finally:
            ticker_task.cancel()
            if paused and not session.finished:
                # The session pauses for the grace period, then terminates.
                await asyncio.sleep(pause_seconds)
            app.state.sessions.pop(session.id, None)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
