"""Text formats for behaviour trees (.bt) and scenarios (.scn).

Trees are parenthesized expressions::

    (selector (condition enemy_visible) (action fire))
    (reasoner (reload reload_urgency) ((sequence ...) cover_score))

A reasoner child is a ``(child utility)`` pair whose child is either a
bare action name or a full node form. Scenario files are line oriented
(``key: value``), with an indented block of rows under ``map:``. Unknown
and duplicate keys are hard errors so a scenario file stays
byte-sufficient for replay.

Every syntax error carries a 1-based line:column and at least one
expected-token suggestion; arbitrary byte input produces errors, never
crashes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .bt import BehaviorNode, action, condition, reasoner, selector, sequence
from .config import COMMANDS, ConfigError, SimConfig, expand_script, parse_map
from .force import ForceConfig
from .utility import UtilityWeights

NODE_FORMS = ("selector", "sequence", "condition", "action", "reasoner")

_NAME_RE = re.compile(r"[a-z_][a-z0-9_]*")


class ParseError(ValueError):
    """Syntax error with position and expected-token suggestions."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...]) -> None:
        hint = ", ".join(expected)
        super().__init__(f"{line}:{column}: {message} (expected {hint})")
        self.bare_message = message
        self.line = line
        self.column = column
        self.expected = expected


@dataclass(frozen=True)
class _Token:
    kind: str  # "(", ")", "name", "junk", "eof"
    text: str
    line: int
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        m = _NAME_RE.match(src, i)
        if m:
            tokens.append(_Token("name", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        tokens.append(_Token("junk", ch, line, col))
        col += 1
        i += 1
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _TreeParser:
    def __init__(self, src: str) -> None:
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str, expected: tuple[str, ...]):
        raise ParseError(message, tok.line, tok.column, expected)

    def expect(self, kind: str, expected: tuple[str, ...]) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            what = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(tok, f"unexpected {what}", expected)
        return tok

    def parse(self) -> BehaviorNode:
        node = self.parse_node()
        tail = self.peek()
        if tail.kind != "eof":
            self.fail(tail, f"trailing input {tail.text!r} after the tree", ("end of input",))
        return node

    def parse_node(self) -> BehaviorNode:
        opener = self.expect("(", ("'('",))
        head = self.take()
        if head.kind == "eof":
            self.fail(head, "unbalanced '('", ("node form",) + NODE_FORMS)
        if head.kind != "name" or head.text not in NODE_FORMS:
            shown = "end of input" if head.kind == "eof" else repr(head.text)
            self.fail(head, f"unknown node form {shown}", NODE_FORMS)
        if head.text in ("condition", "action"):
            name = self.take()
            if name.kind != "name":
                shown = "end of input" if name.kind == "eof" else repr(name.text)
                self.fail(name, f"bad arity: {head.text} needs exactly one name, got {shown}", ("name",))
            closer = self.take()
            if closer.kind != ")":
                if closer.kind == "eof":
                    self.fail(closer, "unbalanced '('", ("')'",))
                self.fail(closer, f"bad arity: {head.text} takes a single name", ("')'",))
            return condition(name.text) if head.text == "condition" else action(name.text)
        if head.text in ("selector", "sequence"):
            children: list[BehaviorNode] = []
            while True:
                tok = self.peek()
                if tok.kind == ")":
                    self.take()
                    ctor = selector if head.text == "selector" else sequence
                    return ctor(*children)
                if tok.kind == "eof":
                    self.fail(tok, "unbalanced '('", ("')'", "'('"))
                if tok.kind != "(":
                    self.fail(tok, f"unexpected {tok.text!r} in {head.text}", ("'('", "')'"))
                children.append(self.parse_node())
        # reasoner: one or more (child utility) pairs
        pairs: list[tuple[BehaviorNode, str]] = []
        while True:
            tok = self.peek()
            if tok.kind == ")":
                self.take()
                return reasoner(*pairs)
            if tok.kind == "eof":
                self.fail(tok, "unbalanced '('", ("')'", "'('"))
            if tok.kind != "(":
                self.fail(tok, f"unexpected {tok.text!r} in reasoner", ("'(child utility)' pair", "')'"))
            pairs.append(self.parse_pair())

    def parse_pair(self) -> tuple[BehaviorNode, str]:
        self.expect("(", ("'('",))
        tok = self.peek()
        if tok.kind == "name":
            self.take()
            child: BehaviorNode = action(tok.text)  # bare name: action shorthand
        elif tok.kind == "(":
            child = self.parse_node()
        else:
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(tok, f"unexpected {shown} in reasoner pair", ("action name", "'('"))
        util = self.take()
        if util.kind != "name":
            shown = "end of input" if util.kind == "eof" else repr(util.text)
            self.fail(util, f"bad arity: reasoner pair needs a utility name, got {shown}", ("utility name",))
        closer = self.take()
        if closer.kind != ")":
            if closer.kind == "eof":
                self.fail(closer, "unbalanced '('", ("')'",))
            self.fail(closer, "bad arity: reasoner pair takes exactly (child utility)", ("')'",))
        return child, util.text


def parse_tree(src: str | bytes) -> BehaviorNode:
    """Parse .bt text into a BehaviorNode, or raise ParseError."""
    if isinstance(src, bytes):
        src = src.decode("utf-8", errors="replace")
    return _TreeParser(src).parse()


def serialize(tree: BehaviorNode) -> str:
    """Canonical, indentation-free text; parse(serialize(t)) == t."""
    if tree.kind in ("condition", "action"):
        return f"({tree.kind} {tree.ref})"
    if tree.kind in ("selector", "sequence"):
        inner = " ".join(serialize(child) for child in tree.children)
        return f"({tree.kind} {inner})" if inner else f"({tree.kind})"
    if tree.kind == "reasoner":
        parts = []
        for child, util in zip(tree.children, tree.utilities):
            head = child.ref if child.kind == "action" else serialize(child)
            parts.append(f"({head} {util})")
        inner = " ".join(parts)
        return f"(reasoner {inner})" if inner else "(reasoner)"
    raise ValueError(f"cannot serialize node kind {tree.kind!r}")


# --- scenario files --------------------------------------------------------

class ScenarioError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


_INT_KEYS = {
    "seed", "ticks", "lost_contact_ticks", "magazine_size", "reserve_capacity",
    "intruder_rounds", "reload_ticks",
}
_FLOAT_KEYS = {
    "t_active", "t_passive", "decay", "decay_factor", "ceiling",
    "gain_gunshot", "gain_footsteps", "gain_rustling", "gain_visual",
    "alpha", "beta", "gamma",
    "sight_range", "weapon_range", "intruder_range",
    "gunshot_radius", "footsteps_radius", "rustling_radius",
    "bot_damage", "intruder_damage", "utility_cap", "tick_rate",
}
_TREE_KEYS = {"patrol_tree", "search_tree", "attack_tree"}
_OTHER_KEYS = {"map", "script", "decay_mode", "infinite_ammo", "waypoints"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _TREE_KEYS | _OTHER_KEYS

_FORCE_FIELDS = {
    "t_active", "t_passive", "decay", "decay_mode", "decay_factor", "ceiling",
    "lost_contact_ticks", "gain_gunshot", "gain_footsteps", "gain_rustling",
    "gain_visual",
}
_WEIGHT_FIELDS = {"alpha", "beta", "gamma"}


def parse_scenario(text: str | bytes) -> SimConfig:
    """Parse .scn text into a SimConfig with defaults filled in.

    Unknown keys, duplicate keys, type mismatches, and range violations
    are all errors carrying the offending line.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    lines = text.split("\n")
    seen: dict[str, int] = {}
    values: dict[str, object] = {}
    map_rows: list[str] | None = None

    i = 0
    while i < len(lines):
        lineno = i + 1
        raw = lines[i]
        stripped = raw.strip()
        i += 1
        if not stripped or stripped.startswith("#"):
            continue
        if raw[0].isspace():
            raise ScenarioError(f"unexpected indented line {stripped!r}", lineno)
        key, colon, rest = raw.partition(":")
        key = key.strip()
        if not colon:
            raise ScenarioError(f"expected 'key: value', got {stripped!r}", lineno)
        if key not in _ALL_KEYS:
            raise ScenarioError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ScenarioError(
                f"duplicate key {key!r} (first defined on line {seen[key]})", lineno
            )
        seen[key] = lineno
        after_colon = raw.index(":") + 1
        value_col = after_colon + (len(rest) - len(rest.lstrip())) + 1

        if key == "map":
            if rest.strip():
                raise ScenarioError("map rows belong on indented lines below 'map:'", lineno)
            rows: list[str] = []
            while i < len(lines) and lines[i].startswith((" ", "\t")) and lines[i].strip():
                rows.append(lines[i].strip())
                i += 1
            if not rows:
                raise ScenarioError("map block is empty", lineno)
            map_rows = rows
            continue

        value = rest.strip()
        if not value:
            raise ScenarioError(f"key {key!r} has no value", lineno, value_col)

        if key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ScenarioError(
                    f"key {key!r} needs an integer, got {value!r}", lineno, value_col
                ) from None
        elif key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ScenarioError(
                    f"key {key!r} needs a number, got {value!r}", lineno, value_col
                ) from None
        elif key == "infinite_ammo":
            if value not in ("true", "false"):
                raise ScenarioError(
                    f"key 'infinite_ammo' needs true or false, got {value!r}", lineno, value_col
                )
            values[key] = value == "true"
        elif key == "decay_mode":
            if value not in ("linear", "exponential"):
                raise ScenarioError(
                    f"decay_mode must be linear or exponential, got {value!r}", lineno, value_col
                )
            values[key] = value
        elif key == "script":
            try:
                values[key] = expand_script(value.split())
            except ConfigError as exc:
                raise ScenarioError(str(exc), lineno, value_col) from None
        elif key == "waypoints":
            points = []
            for part in value.split():
                m = re.fullmatch(r"(\d+),(\d+)", part)
                if not m:
                    raise ScenarioError(
                        f"waypoints need 'x,y' pairs, got {part!r}", lineno, value_col
                    )
                points.append((int(m.group(1)), int(m.group(2))))
            values[key] = tuple(points)
        elif key in _TREE_KEYS:
            try:
                parse_tree(value)  # syntax check now; ids resolve at world build
            except ParseError as exc:
                raise ScenarioError(
                    f"{key}: {exc.bare_message}", lineno, value_col + exc.column - 1
                ) from None
            values[key] = value

    if map_rows is None:
        raise ScenarioError("scenario is missing the required 'map:' block", len(lines))

    try:
        terrain, bot_spawn, intruder_spawn = parse_map(map_rows)
    except ConfigError as exc:
        raise ScenarioError(str(exc), seen["map"]) from None

    force_kwargs = {k: v for k, v in values.items() if k in _FORCE_FIELDS}
    weight_kwargs = {k: v for k, v in values.items() if k in _WEIGHT_FIELDS}
    config_kwargs = {
        k: v
        for k, v in values.items()
        if k not in _FORCE_FIELDS and k not in _WEIGHT_FIELDS
    }
    try:
        force = ForceConfig(**force_kwargs)
        weights = UtilityWeights(**weight_kwargs)
        return SimConfig(
            terrain=terrain,
            bot_spawn=bot_spawn,
            intruder_spawn=intruder_spawn,
            force=force,
            weights=weights,
            **config_kwargs,
        )
    except (ConfigError, ValueError) as exc:
        offending = next(
            (seen[k] for k in list(force_kwargs) + list(weight_kwargs) + list(config_kwargs)
             if k in str(exc)),
            seen.get("map", 1),
        )
        raise ScenarioError(f"range error: {exc}", offending) from None


def with_overrides(config: SimConfig, seed: int | None = None, ticks: int | None = None) -> SimConfig:
    """CLI helper: replace the seed and/or tick budget."""
    out = config
    if seed is not None:
        out = replace(out, seed=seed)
    if ticks is not None:
        out = replace(out, ticks=ticks)
    return out
