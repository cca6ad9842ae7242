from dataclasses import replace
from pathlib import Path

import pytest
from starlette.testclient import TestClient

from wargrid.dsl import parse_scenario
from wargrid.server import Session, build_snapshot, create_app, decode_command
from wargrid.world import World

FIXTURES = Path(__file__).parent / "fixtures"


def duel_config(ticks=40, tick_rate=200.0):
    config = parse_scenario((FIXTURES / "duel.scn").read_text())
    return replace(config, ticks=ticks, tick_rate=tick_rate)


class TestDecodeCommand:
    def test_moves(self):
        assert decode_command({"action": "move", "direction": "N"}) == "move_n"
        assert decode_command({"action": "move", "direction": "W"}) == "move_w"

    def test_simple_actions(self):
        for name in ("fire", "hide", "wait"):
            assert decode_command({"action": name}) == name

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            decode_command({"action": "move", "direction": "up"})

    def test_unknown_action(self):
        with pytest.raises(ValueError):
            decode_command({"action": "dance"})


class TestSession:
    def test_snapshot_per_tick_with_increasing_tick_numbers(self):
        session = Session(duel_config())
        ticks = [session.advance()["tick"] for _ in range(10)]
        assert ticks == list(range(1, 11))

    def test_latest_wins_commands_drop_earlier(self):
        session = Session(duel_config())
        session.submit("fire")
        session.submit("move_w")
        snapshot = session.advance()
        dropped = [e for e in snapshot["events"] if e["kind"] == "command_dropped"]
        applied = [e for e in snapshot["events"] if e["kind"] == "command"]
        assert len(dropped) == 1 and dropped[0]["command"] == "fire"
        assert len(applied) == 1 and applied[0]["command"] == "move_w"

    def test_online_offline_equivalence(self):
        # one command per tick window: session digest == headless digest
        schedule = {1: "fire", 2: "move_w", 3: "fire", 7: "hide", 9: "fire"}
        config = duel_config(ticks=20)
        session = Session(config)
        for t in range(1, 21):
            if t in schedule:
                session.submit(schedule[t])
            session.advance()
        script = [schedule.get(t, "wait") for t in range(1, 21)]
        offline = World(config)
        for cmd in script:
            offline.step(cmd)
        assert session.world.log.digest() == offline.log.digest()
        assert session.command_schedule() == {t: schedule.get(t, "wait") for t in range(1, 21)}

    def test_golden_transcript_matches_headless_snapshots(self):
        schedule = {2: "fire", 5: "move_w", 8: "fire"}
        config = duel_config(ticks=12)
        session = Session(config)
        online = []
        for t in range(1, 13):
            if t in schedule:
                session.submit(schedule[t])
            online.append(session.advance())
        offline_world = World(config)
        offline = []
        for t in range(1, 13):
            events = offline_world.step(schedule.get(t, "wait"))
            offline.append(build_snapshot(offline_world, events))
        assert online == offline

    def test_finishes_at_tick_budget(self):
        session = Session(duel_config(ticks=3))
        for _ in range(3):
            session.advance()
        assert session.finished


class TestSnapshotSchema:
    def test_fields(self):
        session = Session(duel_config())
        snap = session.advance()
        assert snap["type"] == "snapshot"
        assert set(snap) == {"type", "tick", "bot", "intruder", "events"}
        bot = snap["bot"]
        assert set(bot) == {"position", "mode", "force", "health", "ammo",
                            "magazine", "utilities"}
        assert isinstance(bot["position"]["x"], int)
        assert isinstance(bot["position"]["y"], int)
        assert bot["mode"] in ("patrol", "active_search", "attack")
        if bot["utilities"] is not None:
            u = bot["utilities"]
            assert len(u["options"]) == len(u["scores"]) == len(u["probabilities"])
            assert 0 <= u["chosen"] < len(u["options"])
            assert abs(sum(u["probabilities"]) - 1.0) < 1e-6

    def test_exposes_live_reasoner_choice(self):
        # the duel opens in attack (intruder visible immediately)
        session = Session(duel_config())
        snap = session.advance()
        utilities = snap["bot"]["utilities"]
        assert utilities is not None
        assert set(utilities["options"]) == {"fire_at_enemy", "seek_cover"}

    def test_utilities_shown_even_in_patrol(self):
        config = parse_scenario((FIXTURES / "silent.scn").read_text())
        session = Session(config)
        snap = session.advance()
        utilities = snap["bot"]["utilities"]
        assert snap["bot"]["mode"] == "patrol"
        assert set(utilities["options"]) == {"patrol_move", "rest", "chat"}


class TestWebSocketService:
    def make_client(self, **kwargs):
        app = create_app(duel_config(**kwargs), pause_seconds=0.0)
        return TestClient(app)

    def test_handshake_and_snapshot_stream(self):
        client = self.make_client()
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "hello", "name": "tester"})
            welcome = ws.receive_json()
            assert welcome["type"] == "welcome"
            assert welcome["map"]["width"] == 10
            assert welcome["config"]["seed"] == 23
            assert welcome["config"]["t_active"] == 40.0
            ticks = [ws.receive_json()["tick"] for _ in range(5)]
            assert ticks == sorted(ticks)
            assert len(set(ticks)) == len(ticks)  # strictly increasing, no gaps
            assert ticks == list(range(ticks[0], ticks[0] + 5))
            ws.send_json({"type": "bye"})
            assert ws.receive_json()["type"] == "bye"

    def test_command_application_over_socket(self):
        client = self.make_client(ticks=400, tick_rate=50.0)
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "hello", "name": "tester"})
            ws.receive_json()  # welcome
            ws.send_json({"type": "command", "action": "fire"})
            saw_fire = False
            for _ in range(40):
                snap = ws.receive_json()
                if snap.get("type") != "snapshot":
                    break
                if any(e["kind"] == "command" and e["command"] == "fire"
                       for e in snap["events"]):
                    saw_fire = True
                    break
            assert saw_fire
            ws.send_json({"type": "bye"})

    def test_malformed_handshake_gets_error_frame(self):
        client = self.make_client()
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "greetings"})
            reply = ws.receive_json()
            assert reply["type"] == "error"

    def test_malformed_command_gets_error_frame(self):
        client = self.make_client()
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "hello", "name": "x"})
            ws.receive_json()
            ws.send_json({"type": "command", "action": "dance"})
            for _ in range(50):
                msg = ws.receive_json()
                if msg["type"] == "error":
                    break
            else:
                pytest.fail("no error frame for a malformed command")

    def test_session_ends_with_bye_at_budget(self):
        client = self.make_client(ticks=5, tick_rate=500.0)
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "hello", "name": "x"})
            ws.receive_json()
            messages = []
            for _ in range(10):
                messages.append(ws.receive_json())
                if messages[-1]["type"] == "bye":
                    break
            assert messages[-1]["type"] == "bye"
            snapshots = [m for m in messages if m["type"] == "snapshot"]
            assert [s["tick"] for s in snapshots] == [1, 2, 3, 4, 5]
