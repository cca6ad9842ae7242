"""Scenario configuration: one immutable, replay-sufficient value object.

Everything a run depends on lives here — terrain, spawns, force tuning,
utility weights, perception radii, weapon constants, the RNG seed, and
the intruder script — so (config, seed, script) fully determines a match.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .force import ForceConfig
from .utility import UtilityWeights

OPEN, OBSTACLE, COVER = ".", "#", "C"
TERRAIN_CHARS = frozenset((OPEN, OBSTACLE, COVER))

#: Intruder commands accepted by the simulation and the script format.
COMMANDS = frozenset(
    {"wait", "fire", "hide", "move_n", "move_s", "move_e", "move_w"}
)


class ConfigError(ValueError):
    pass


def parse_map(rows: Sequence[str]) -> tuple[tuple[str, ...], tuple[int, int], tuple[int, int]]:
    """Extract terrain and the B/I spawn markers from raw map rows.

    Rows use '#' obstacle, '.' open, 'C' cover, plus exactly one 'B' (bot)
    and one 'I' (intruder) standing on open ground.
    """
    if not rows:
        raise ConfigError("map must have at least one row")
    width = len(rows[0])
    if width == 0:
        raise ConfigError("map rows must be nonempty")
    bot = intruder = None
    terrain: list[str] = []
    for y, row in enumerate(rows):
        if len(row) != width:
            raise ConfigError(f"map row {y} has length {len(row)}, expected {width}")
        cleaned = []
        for x, ch in enumerate(row):
            if ch == "B":
                if bot is not None:
                    raise ConfigError("map has more than one bot spawn 'B'")
                bot = (x, y)
                cleaned.append(OPEN)
            elif ch == "I":
                if intruder is not None:
                    raise ConfigError("map has more than one intruder spawn 'I'")
                intruder = (x, y)
                cleaned.append(OPEN)
            elif ch in TERRAIN_CHARS:
                cleaned.append(ch)
            else:
                raise ConfigError(f"map row {y} column {x}: unknown cell {ch!r}")
        terrain.append("".join(cleaned))
    if bot is None:
        raise ConfigError("map is missing the bot spawn 'B'")
    if intruder is None:
        raise ConfigError("map is missing the intruder spawn 'I'")
    return tuple(terrain), bot, intruder


def expand_script(tokens: Iterable[str]) -> tuple[str, ...]:
    """Expand script tokens, each ``command`` or ``command*count``, into one
    command per tick."""
    commands: list[str] = []
    for token in tokens:
        name, star, count = token.partition("*")
        if star:
            try:
                repeat = int(count)
            except ValueError:
                raise ConfigError(f"bad repeat count in script token {token!r}") from None
            if repeat < 1:
                raise ConfigError(f"repeat count must be positive in {token!r}")
        else:
            repeat = 1
        if name not in COMMANDS:
            raise ConfigError(f"unknown script command {name!r}")
        commands.extend([name] * repeat)
    return tuple(commands)


@dataclass(frozen=True)
class SimConfig:
    terrain: tuple[str, ...]
    bot_spawn: tuple[int, int]
    intruder_spawn: tuple[int, int]
    seed: int = 0
    ticks: int = 100
    script: tuple[str, ...] = ()
    force: ForceConfig = field(default_factory=ForceConfig)
    weights: UtilityWeights = field(default_factory=UtilityWeights)
    sight_range: float = 10.0
    weapon_range: float = 6.0
    intruder_range: float = 6.0
    gunshot_radius: float | None = None  # None: heard anywhere on the map
    footsteps_radius: float = 8.0
    rustling_radius: float = 5.0
    bot_damage: float = 0.25
    intruder_damage: float = 0.2
    magazine_size: int = 6
    reserve_capacity: int = 24
    intruder_rounds: int = 999
    reload_ticks: int = 3
    utility_cap: float = 1e6
    tick_rate: float = 10.0
    infinite_ammo: bool = False
    waypoints: tuple[tuple[int, int], ...] = ()
    patrol_tree: str | None = None
    search_tree: str | None = None
    attack_tree: str | None = None

    def __post_init__(self) -> None:
        parse_map_like = [row.replace("B", OPEN).replace("I", OPEN) for row in self.terrain]
        for y, row in enumerate(parse_map_like):
            for x, ch in enumerate(row):
                if ch not in TERRAIN_CHARS:
                    raise ConfigError(f"terrain row {y} column {x}: unknown cell {ch!r}")
        for name, pos in (("bot_spawn", self.bot_spawn), ("intruder_spawn", self.intruder_spawn)):
            x, y = pos
            if not (0 <= y < self.height and 0 <= x < self.width):
                raise ConfigError(f"{name} {pos} is out of bounds")
            if self.terrain[y][x] == OBSTACLE:
                raise ConfigError(f"{name} {pos} is inside an obstacle")
        if self.ticks < 0:
            raise ConfigError("ticks must be nonnegative")
        for name in ("sight_range", "weapon_range", "intruder_range", "tick_rate"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("footsteps_radius", "rustling_radius", "bot_damage", "intruder_damage"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.gunshot_radius is not None and self.gunshot_radius < 0:
            raise ConfigError("gunshot_radius must be nonnegative")
        for name in ("magazine_size", "reload_ticks"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        for name in ("reserve_capacity", "intruder_rounds"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.utility_cap <= 2.72:
            raise ConfigError("utility_cap must exceed e")
        for cmd in self.script:
            if cmd not in COMMANDS:
                raise ConfigError(f"unknown script command {cmd!r}")
        for x, y in self.waypoints:
            if not (0 <= y < self.height and 0 <= x < self.width):
                raise ConfigError(f"waypoint ({x}, {y}) is out of bounds")

    @property
    def width(self) -> int:
        return len(self.terrain[0])

    @property
    def height(self) -> int:
        return len(self.terrain)
