"""Deterministic grid world: one behaviour-tree bot versus one intruder.

Each tick runs a fixed phase order: (1) apply the intruder command,
(2) perceive stimuli and raise force, (3) decay force, (4) mode
transition, (5) tick the subtree selected by the mode, (6) execute the
bot's chosen action, (7) append events. The only randomness is the
reasoner sampling, drawn from the world's single seeded stream, so
(config, seed, script) determines the full event log and its digest.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from . import dsl
from .bt import (
    BehaviorNode,
    Blackboard,
    NodeStatus,
    Registry,
    TickTrace,
    TreeState,
    reset,
    tick,
    validate,
)
from .config import COMMANDS, COVER, OBSTACLE, SimConfig
from .force import (
    ForceConfig,
    ForceState,
    Mode,
    Stimulus,
    StimulusKind,
    apply_stimulus,
    decay_tick,
    note_contact_lost,
    transition,
)
from .utility import (
    AgentVitals,
    aggression_input,
    blind_fire_utility,
    decay_utility,
    peek_fire_utility,
    relocate_utility,
    reload_utility,
    UtilityWeights,
)

#: Threat scales with the mode: patrolling bots feel none, attackers full.
MODE_THREAT_FACTOR = {Mode.PATROL: 0.0, Mode.ACTIVE_SEARCH: 0.5, Mode.ATTACK: 1.0}

DEFAULT_PATROL_TREE = (
    "(reasoner (patrol_move const_one) (rest const_one) (chat const_one))"
)
DEFAULT_SEARCH_TREE = (
    "(reasoner (sneak_toward aggression_decay) (run_toward aggression_rise))"
)
DEFAULT_ATTACK_TREE = (
    "(reasoner (fire_at_enemy aggression_decay)"
    " ((sequence (action seek_cover)"
    " (reasoner (reload reload_urgency) (peek_fire peek_score)"
    " (blind_fire blind_score) (relocate relocate_score)))"
    " aggression_rise))"
)

_DIRECTIONS = {"move_n": (0, -1), "move_s": (0, 1), "move_e": (1, 0), "move_w": (-1, 0)}


def distance(a: tuple[int, int], b: tuple[int, int]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def bresenham(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """Grid cells from a to b inclusive."""
    x0, y0 = a
    x1, y1 = b
    cells = []
    dx, dy = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x1 > x0 else -1
    sy = 1 if y1 > y0 else -1
    err = dx - dy
    x, y = x0, y0
    while True:
        cells.append((x, y))
        if (x, y) == (x1, y1):
            return cells
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x += sx
        if e2 < dx:
            err += dx
            y += sy


@dataclass(frozen=True)
class Event:
    tick: int
    kind: str
    payload: dict

    def to_json(self) -> str:
        return json.dumps(
            {"tick": self.tick, "kind": self.kind, **self.payload},
            sort_keys=True,
            separators=(",", ":"),
        )


class EventLog:
    """Append-only tick records with a deterministic 64-bit digest."""

    def __init__(self) -> None:
        self.records: list[Event] = []

    def append(self, tick_index: int, kind: str, **payload) -> Event:
        event = Event(tick_index, kind, payload)
        self.records.append(event)
        return event

    def lines(self) -> Iterable[str]:
        return (event.to_json() for event in self.records)

    def digest(self) -> str:
        h = hashlib.blake2b(digest_size=8)
        for line in self.lines():
            h.update(line.encode("utf-8"))
            h.update(b"\n")
        return h.hexdigest()


@dataclass
class BotAgent:
    position: tuple[int, int]
    force: ForceState
    weights: UtilityWeights
    health: float = 1.0
    magazine_rounds: int = 6
    magazine_size: int = 6
    reserve_rounds: int = 24
    reserve_capacity: int = 24
    reload_remaining: int = 0
    waypoint_index: int = 0
    last_known: tuple[int, int] | None = None
    exposed: bool = False  # fired last tick: cover does not protect

    @property
    def magazine_fraction(self) -> float:
        return self.magazine_rounds / self.magazine_size

    @property
    def ammo_fraction(self) -> float:
        carried = self.magazine_rounds + self.reserve_rounds
        capacity = self.magazine_size + self.reserve_capacity
        return carried / capacity if capacity else 0.0


@dataclass
class Intruder:
    position: tuple[int, int]
    health: float = 1.0
    rounds: int = 999
    hidden: bool = False


@dataclass
class ReasonerSnapshot:
    """Most recent fresh reasoner decision, exposed for the UI."""

    options: tuple[str, ...]
    scores: tuple[float, ...]
    probabilities: tuple[float, ...]
    chosen: int


class World:
    def __init__(self, config: SimConfig) -> None:
        self.config = config
        self.terrain = config.terrain
        self.rng = random.Random(config.seed)
        self.tick_index = 0
        self.log = EventLog()
        self.bot = BotAgent(
            position=config.bot_spawn,
            force=ForceState(config=config.force),
            weights=config.weights,
            magazine_rounds=config.magazine_size,
            magazine_size=config.magazine_size,
            reserve_rounds=config.reserve_capacity,
            reserve_capacity=config.reserve_capacity,
        )
        self.intruder = Intruder(position=config.intruder_spawn, rounds=config.intruder_rounds)
        self.waypoints = list(config.waypoints) or self._default_waypoints()
        self._emissions: list[tuple[StimulusKind, tuple[int, int]]] = []
        self._pending: tuple | None = None
        self.last_decision: ReasonerSnapshot | None = None
        self.registry = self._build_registry()
        self.trees: dict[Mode, BehaviorNode] = {
            Mode.PATROL: dsl.parse_tree(config.patrol_tree or DEFAULT_PATROL_TREE),
            Mode.ACTIVE_SEARCH: dsl.parse_tree(config.search_tree or DEFAULT_SEARCH_TREE),
            Mode.ATTACK: dsl.parse_tree(config.attack_tree or DEFAULT_ATTACK_TREE),
        }
        for mode, tree in self.trees.items():
            problems = validate(tree, self.registry)
            if problems:
                details = "; ".join(f"{d.path}: {d.message}" for d in problems)
                raise ValueError(f"{mode.value} tree failed validation: {details}")
        self.tree_states = {mode: TreeState() for mode in self.trees}
        self._option_labels = {
            mode: _reasoner_labels(tree) for mode, tree in self.trees.items()
        }

    # -- terrain helpers -----------------------------------------------------

    def cell(self, pos: tuple[int, int]) -> str:
        x, y = pos
        return self.terrain[y][x]

    def in_bounds(self, pos: tuple[int, int]) -> bool:
        x, y = pos
        return 0 <= x < self.config.width and 0 <= y < self.config.height

    def walkable(self, pos: tuple[int, int]) -> bool:
        return self.in_bounds(pos) and self.cell(pos) != OBSTACLE

    def line_of_sight(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        """True when no obstacle sits strictly between a and b."""
        for cell in bresenham(a, b)[1:-1]:
            if self.cell(cell) == OBSTACLE:
                return False
        return True

    def _default_waypoints(self) -> list[tuple[int, int]]:
        w, h = self.config.width, self.config.height
        corners = [(1, 1), (w - 2, 1), (w - 2, h - 2), (1, h - 2)]
        found: list[tuple[int, int]] = []
        for corner in corners:
            spot = self._nearest_walkable(corner)
            if spot is not None and spot not in found:
                found.append(spot)
        return found or [self.config.bot_spawn]

    def _nearest_walkable(self, target: tuple[int, int]) -> tuple[int, int] | None:
        best = None
        best_key = None
        for y in range(self.config.height):
            for x in range(self.config.width):
                if self.terrain[y][x] == OBSTACLE:
                    continue
                key = (distance((x, y), target), y, x)
                if best_key is None or key < best_key:
                    best, best_key = (x, y), key
        return best

    def _nearest_cover(self, origin: tuple[int, int], exclude_origin: bool = False) -> tuple[int, int] | None:
        best = None
        best_key = None
        for y in range(self.config.height):
            for x in range(self.config.width):
                if self.terrain[y][x] != COVER:
                    continue
                if exclude_origin and (x, y) == origin:
                    continue
                key = (distance((x, y), origin), y, x)
                if best_key is None or key < best_key:
                    best, best_key = (x, y), key
        return best

    def _step_toward(self, pos: tuple[int, int], target: tuple[int, int], blocked: tuple[int, int]) -> tuple[int, int]:
        """One greedy step with deterministic obstacle sidestep."""
        if pos == target:
            return pos
        dx = target[0] - pos[0]
        dy = target[1] - pos[1]
        primary = [(int(math.copysign(1, dx)) if dx else 0, 0), (0, int(math.copysign(1, dy)) if dy else 0)]
        if abs(dy) > abs(dx):
            primary.reverse()
        fallback = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        for step in primary + fallback:
            if step == (0, 0):
                continue
            nxt = (pos[0] + step[0], pos[1] + step[1])
            if self.walkable(nxt) and nxt != blocked:
                return nxt
        return pos

    # -- perception ----------------------------------------------------------

    def perceive(self) -> list[Stimulus]:
        """Stimuli the bot picks up this tick: audible cues within their
        radii plus visual contact along an unobstructed raycast."""
        heard: list[Stimulus] = []
        tick_no = self.tick_index + 1
        radii = {
            StimulusKind.GUNSHOT: self.config.gunshot_radius,
            StimulusKind.FOOTSTEPS: self.config.footsteps_radius,
            StimulusKind.RUSTLING: self.config.rustling_radius,
        }
        for kind, pos in self._emissions:
            radius = radii[kind]
            if radius is None or distance(self.bot.position, pos) <= radius:
                heard.append(Stimulus(kind, pos, tick_no))
        visible = (
            not self.intruder.hidden
            and distance(self.bot.position, self.intruder.position) <= self.config.sight_range
            and self.line_of_sight(self.bot.position, self.intruder.position)
        )
        if visible:
            heard.append(Stimulus(StimulusKind.VISUAL_CONTACT, self.intruder.position, tick_no))
        return heard

    # -- blackboard and registry ----------------------------------------------

    def _vitals(self) -> AgentVitals:
        mode = self.bot.force.mode
        if self.bot.last_known is None:
            threat = 0.0
        else:
            d = distance(self.bot.position, self.bot.last_known)
            threat = MODE_THREAT_FACTOR[mode] * (1.0 / (1.0 + d))
        return AgentVitals(
            threat=threat,
            health=max(0.0, self.bot.health),
            ammo=min(1.0, self.bot.ammo_fraction),
            magazine=self.bot.magazine_fraction,
        )

    def _blackboard(self, vitals: AgentVitals, enemy_visible: bool) -> Blackboard:
        bb = Blackboard()
        bb["threat"] = vitals.threat
        bb["health"] = vitals.health
        bb["ammo"] = vitals.ammo
        bb["magazine"] = vitals.magazine
        bb["aggression"] = aggression_input(vitals, self.bot.weights)
        bb["force"] = self.bot.force.force
        bb["mode"] = self.bot.force.mode.value
        bb["enemy_visible"] = enemy_visible
        bb["last_known"] = self.bot.last_known
        bb["at_cover"] = self.cell(self.bot.position) == COVER
        return bb

    def _build_registry(self) -> Registry:
        reg = Registry()
        cfg = self.config

        # conditions
        reg.register_condition("enemy_visible", lambda bb: bool(bb["enemy_visible"]))
        reg.register_condition("at_cover", lambda bb: bool(bb["at_cover"]))
        reg.register_condition("magazine_empty", lambda bb: bb["magazine"] == 0.0)
        reg.register_condition("has_target", lambda bb: bb["last_known"] is not None)

        # utility scorers; any of these may be swapped via tree sources
        reg.register_utility("const_one", lambda bb: 1.0)
        reg.register_utility("aggression_decay", lambda bb: decay_utility(bb["aggression"]))
        reg.register_utility("aggression_rise", lambda bb: 1.0 - decay_utility(bb["aggression"]))
        reg.register_utility(
            "reload_urgency", lambda bb: reload_utility(bb["magazine"], cfg.utility_cap)
        )
        reg.register_utility("peek_score", lambda bb: peek_fire_utility(bb["threat"]))
        reg.register_utility("blind_score", lambda bb: blind_fire_utility(bb["threat"], bb["ammo"]))
        reg.register_utility(
            "relocate_score", lambda bb: relocate_utility(bb["threat"], bb["health"])
        )

        # actions set an intent executed after the tree tick
        def intend(name: str, *args) -> None:
            self._pending = (name, *args)

        def act_patrol_move(bb) -> NodeStatus:
            intend("patrol_move")
            return NodeStatus.SUCCESS

        def act_rest(bb) -> NodeStatus:
            intend("rest")
            return NodeStatus.SUCCESS

        def act_chat(bb) -> NodeStatus:
            intend("chat")
            return NodeStatus.SUCCESS

        def act_sneak(bb) -> NodeStatus:
            if bb["last_known"] is None:
                return NodeStatus.FAILURE
            intend("step_toward", "sneak_toward", bb["last_known"], 1)
            return NodeStatus.SUCCESS

        def act_run(bb) -> NodeStatus:
            if bb["last_known"] is None:
                return NodeStatus.FAILURE
            intend("step_toward", "run_toward", bb["last_known"], 2)
            return NodeStatus.SUCCESS

        def _can_fire(bb) -> bool:
            return cfg.infinite_ammo or self.bot.magazine_rounds > 0

        def act_fire(bb) -> NodeStatus:
            if not bb["enemy_visible"] or not _can_fire(bb):
                return NodeStatus.FAILURE
            intend("fire", "fire_at_enemy", True, 1.0)
            return NodeStatus.SUCCESS

        def act_seek_cover(bb) -> NodeStatus:
            if bb["at_cover"]:
                return NodeStatus.SUCCESS
            target = self._nearest_cover(self.bot.position)
            if target is None:
                return NodeStatus.FAILURE
            intend("step_toward", "seek_cover", target, 1)
            return NodeStatus.RUNNING

        def act_reload(bb) -> NodeStatus:
            if self.bot.magazine_rounds >= self.bot.magazine_size:
                return NodeStatus.FAILURE
            if not cfg.infinite_ammo and self.bot.reserve_rounds <= 0:
                return NodeStatus.FAILURE
            remaining = self.bot.reload_remaining or cfg.reload_ticks
            intend("reload")
            return NodeStatus.SUCCESS if remaining == 1 else NodeStatus.RUNNING

        def act_peek_fire(bb) -> NodeStatus:
            if not bb["enemy_visible"] or not _can_fire(bb):
                return NodeStatus.FAILURE
            intend("fire", "peek_fire", True, 1.0)
            return NodeStatus.SUCCESS

        def act_blind_fire(bb) -> NodeStatus:
            if bb["last_known"] is None or not _can_fire(bb):
                return NodeStatus.FAILURE
            intend("fire", "blind_fire", False, 0.5)
            return NodeStatus.SUCCESS

        def act_relocate(bb) -> NodeStatus:
            target = self._nearest_cover(self.bot.position, exclude_origin=True)
            if target is None:
                return NodeStatus.FAILURE
            intend("step_toward", "relocate", target, 1)
            return NodeStatus.SUCCESS

        reg.register_action("patrol_move", act_patrol_move)
        reg.register_action("rest", act_rest)
        reg.register_action("chat", act_chat)
        reg.register_action("sneak_toward", act_sneak)
        reg.register_action("run_toward", act_run)
        reg.register_action("fire_at_enemy", act_fire)
        reg.register_action("fire", act_fire)  # alias for hand-written trees
        reg.register_action("seek_cover", act_seek_cover)
        reg.register_action("reload", act_reload)
        reg.register_action("peek_fire", act_peek_fire)
        reg.register_action("blind_fire", act_blind_fire)
        reg.register_action("relocate", act_relocate)
        return reg

    # -- tick ------------------------------------------------------------------

    def step(self, intruder_cmd: str | None = None) -> list[Event]:
        """Advance one tick; returns the events appended during it."""
        t = self.tick_index + 1
        start = len(self.log.records)
        self._emissions = []

        self._apply_intruder_command(t, intruder_cmd or "wait")

        stimuli = self.perceive()
        saw_enemy = False
        for stim in stimuli:
            self.bot.force = apply_stimulus(self.bot.force, stim)
            self.bot.last_known = stim.position
            saw_enemy = saw_enemy or stim.kind is StimulusKind.VISUAL_CONTACT
            self.log.append(
                t, "stimulus",
                what=stim.kind.value, x=stim.position[0], y=stim.position[1],
            )
        if not saw_enemy:
            self.bot.force = note_contact_lost(self.bot.force)

        self.bot.force = decay_tick(self.bot.force)

        previous_mode = self.bot.force.mode
        self.bot.force = transition(self.bot.force)
        mode = self.bot.force.mode
        if mode is not previous_mode:
            reset(self.tree_states[previous_mode])  # abandoned subtree forgets progress
            self.log.append(t, "mode", previous=previous_mode.value, current=mode.value)

        vitals = self._vitals()
        bb = self._blackboard(vitals, saw_enemy)
        trace = TickTrace()
        self._pending = None
        status = tick(self.trees[mode], self.tree_states[mode], bb, self.rng, self.registry, trace)
        for decision in trace.decisions:
            if decision.pinned:
                continue
            labels = self._option_labels[mode].get(decision.path)
            if labels is not None:
                self.last_decision = ReasonerSnapshot(
                    options=labels,
                    scores=decision.scores or (),
                    probabilities=decision.probabilities or (),
                    chosen=decision.chosen,
                )
            self.log.append(
                t, "decision",
                path=list(decision.path),
                scores=[round(s, 9) for s in (decision.scores or ())],
                chosen=decision.chosen,
            )
        self.log.append(
            t, "bt",
            mode=mode.value, status=status.value, action=self._pending_label(),
        )

        fired = self._execute_pending(t)
        self.bot.exposed = fired

        self.tick_index = t
        return self.log.records[start:]

    def _pending_label(self) -> str | None:
        if self._pending is None:
            return None
        name = self._pending[0]
        if name in ("step_toward", "fire"):
            return self._pending[1]
        return name

    def _apply_intruder_command(self, t: int, cmd: str) -> None:
        intruder = self.intruder
        if cmd not in COMMANDS:
            self.log.append(t, "command_rejected", command=cmd, reason="unknown command")
            return
        if cmd in _DIRECTIONS:
            dx, dy = _DIRECTIONS[cmd]
            target = (intruder.position[0] + dx, intruder.position[1] + dy)
            if not self.walkable(target) or target == self.bot.position:
                self.log.append(t, "command_rejected", command=cmd, reason="blocked")
                return
            intruder.position = target
            intruder.hidden = False
            self._emissions.append((StimulusKind.FOOTSTEPS, target))
            self.log.append(t, "command", command=cmd, x=target[0], y=target[1])
            return
        if cmd == "fire":
            if intruder.rounds <= 0:
                self.log.append(t, "command_rejected", command=cmd, reason="no ammunition")
                return
            intruder.rounds -= 1
            intruder.hidden = False
            self._emissions.append((StimulusKind.GUNSHOT, intruder.position))
            hit = self._resolve_intruder_shot()
            self.log.append(t, "command", command=cmd)
            self.log.append(t, "shot", by="intruder", hit=hit)
            if hit:
                self.bot.health = max(0.0, self.bot.health - self.config.intruder_damage)
                self.log.append(t, "damage", target="bot", health=round(self.bot.health, 9))
            return
        if cmd == "hide":
            effective = self.cell(intruder.position) == COVER
            intruder.hidden = effective
            self._emissions.append((StimulusKind.RUSTLING, intruder.position))
            self.log.append(t, "command", command=cmd, effective=effective)
            return
        self.log.append(t, "command", command="wait")

    def _resolve_intruder_shot(self) -> bool:
        bot, intruder = self.bot, self.intruder
        if distance(intruder.position, bot.position) > self.config.intruder_range:
            return False
        if not self.line_of_sight(intruder.position, bot.position):
            return False
        # Standing on cover blocks incoming fire unless the occupant shot
        # last tick and is still exposed.
        if self.cell(bot.position) == COVER and not bot.exposed:
            return False
        return True

    def _execute_pending(self, t: int) -> bool:
        """Apply the bot intent chosen during the tree tick; returns whether
        the bot fired (and is therefore exposed next tick)."""
        pending = self._pending
        bot = self.bot
        if pending is None:
            return False
        name = pending[0]

        if name == "patrol_move":
            target = self.waypoints[bot.waypoint_index % len(self.waypoints)]
            if bot.position == target:
                bot.waypoint_index = (bot.waypoint_index + 1) % len(self.waypoints)
                target = self.waypoints[bot.waypoint_index % len(self.waypoints)]
            bot.position = self._step_toward(bot.position, target, self.intruder.position)
            self.log.append(t, "action", name=name, x=bot.position[0], y=bot.position[1])
            return False

        if name in ("rest", "chat"):
            self.log.append(t, "action", name=name)
            return False

        if name == "step_toward":
            _, label, target, speed = pending
            for _ in range(speed):
                bot.position = self._step_toward(bot.position, target, self.intruder.position)
            self.log.append(t, "action", name=label, x=bot.position[0], y=bot.position[1])
            return False

        if name == "reload":
            if bot.reload_remaining == 0:
                bot.reload_remaining = self.config.reload_ticks
            bot.reload_remaining -= 1
            if bot.reload_remaining == 0:
                need = bot.magazine_size - bot.magazine_rounds
                if self.config.infinite_ammo:
                    taken = need
                else:
                    taken = min(need, bot.reserve_rounds)
                    bot.reserve_rounds -= taken
                bot.magazine_rounds += taken
                self.log.append(t, "reload_complete", magazine=bot.magazine_rounds)
            else:
                self.log.append(t, "action", name="reload", remaining=bot.reload_remaining)
            return False

        if name == "fire":
            _, label, require_visibility, damage_scale = pending
            if not self.config.infinite_ammo:
                bot.magazine_rounds = max(0, bot.magazine_rounds - 1)
            hit = self._resolve_bot_shot(require_visibility)
            self.log.append(t, "shot", by="bot", name=label, hit=hit)
            if hit:
                dmg = self.config.bot_damage * damage_scale
                self.intruder.health = max(0.0, self.intruder.health - dmg)
                self.log.append(
                    t, "damage", target="intruder", health=round(self.intruder.health, 9)
                )
            return True

        self.log.append(t, "action", name=name)
        return False

    def _resolve_bot_shot(self, require_visibility: bool) -> bool:
        # Aimed shots cannot connect with a hidden target; blind fire sprays
        # the last-known spot and ignores hiding, but still needs a clear
        # line and range.
        bot, intruder = self.bot, self.intruder
        if distance(bot.position, intruder.position) > self.config.weapon_range:
            return False
        if not self.line_of_sight(bot.position, intruder.position):
            return False
        if require_visibility and intruder.hidden:
            return False
        return True


def _reasoner_labels(tree: BehaviorNode) -> dict[tuple[int, ...], tuple[str, ...]]:
    """Map each reasoner path to readable child labels for snapshots."""

    def label(node: BehaviorNode) -> str:
        if node.ref:
            return node.ref
        for child in node.children:
            got = label(child)
            if got:
                return got
        return node.kind

    out: dict[tuple[int, ...], tuple[str, ...]] = {}

    def walk(node: BehaviorNode, path: tuple[int, ...]) -> None:
        if node.kind == "reasoner":
            out[path] = tuple(label(child) for child in node.children)
        for i, child in enumerate(node.children):
            walk(child, path + (i,))

    walk(tree, ())
    return out


@dataclass
class SummaryStats:
    ticks: int
    mode_occupancy: dict[str, int]
    actions: dict[str, int]
    shots: dict[str, int]
    hits: dict[str, int]
    bot_health: float
    bot_ammo: float
    bot_magazine: float
    intruder_health: float
    digest: str

    def to_text(self) -> str:
        lines = [f"ticks: {self.ticks}"]
        for mode in Mode:
            lines.append(f"occupancy_{mode.value}: {self.mode_occupancy.get(mode.value, 0)}")
        action_text = " ".join(f"{k}={v}" for k, v in sorted(self.actions.items()))
        lines.append(f"actions: {action_text}")
        lines.append(f"shots_bot: {self.shots.get('bot', 0)}")
        lines.append(f"shots_intruder: {self.shots.get('intruder', 0)}")
        lines.append(f"hits_bot: {self.hits.get('bot', 0)}")
        lines.append(f"hits_intruder: {self.hits.get('intruder', 0)}")
        lines.append(f"bot_health: {self.bot_health}")
        lines.append(f"bot_ammo: {self.bot_ammo}")
        lines.append(f"bot_magazine: {self.bot_magazine}")
        lines.append(f"intruder_health: {self.intruder_health}")
        lines.append(f"digest: {self.digest}")
        return "\n".join(lines) + "\n"


def run_scenario(
    config: SimConfig,
    script: Iterable[str] | None = None,
    ticks: int | None = None,
) -> SummaryStats:
    """Headless run: returns occupancy, action and shot counts, final
    vitals, and the event-log digest."""
    _, stats = run_match(config, script, ticks)
    return stats


def run_match(
    config: SimConfig,
    script: Iterable[str] | None = None,
    ticks: int | None = None,
) -> tuple[World, SummaryStats]:
    """run_scenario, but also hands back the finished world (for its log)."""
    world = World(config)
    commands = tuple(script) if script is not None else config.script
    budget = config.ticks if ticks is None else ticks
    occupancy: Counter[str] = Counter()
    actions: Counter[str] = Counter()
    shots: Counter[str] = Counter()
    hits: Counter[str] = Counter()
    for i in range(budget):
        cmd = commands[i] if i < len(commands) else "wait"
        events = world.step(cmd)
        occupancy[world.bot.force.mode.value] += 1
        for event in events:
            if event.kind == "bt" and event.payload.get("action"):
                actions[event.payload["action"]] += 1
            elif event.kind == "shot":
                shooter = event.payload["by"]
                shots[shooter] += 1
                if event.payload["hit"]:
                    hits[shooter] += 1
    stats = SummaryStats(
        ticks=budget,
        mode_occupancy=dict(occupancy),
        actions=dict(actions),
        shots=dict(shots),
        hits=dict(hits),
        bot_health=world.bot.health,
        bot_ammo=world.bot.ammo_fraction,
        bot_magazine=world.bot.magazine_fraction,
        intruder_health=world.intruder.health,
        digest=world.log.digest(),
    )
    return world, stats
