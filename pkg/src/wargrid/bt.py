"""Behaviour-tree data model and tick interpreter.

Composites are selectors and sequences; leaves are named conditions and
actions resolved against a Registry. A reasoner is the utility-based
replacement for a selector: it scores every child through the registry,
normalizes the scores into probabilities, and samples one child with the
supplied RNG.

A leaf returning RUNNING leaves a bookmark in TreeState; the next tick
descends straight along that path without re-evaluating anything to its
left (pure resume). A reasoner on the bookmark path keeps its previous
choice pinned instead of resampling. Trees are immutable after
validation and may be shared read-only; TreeState is per-agent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Callable

from .utility import normalize

#: Bookmark paths are bounded by capping the tree depth.
MAX_DEPTH = 64

COMPOSITE_KINDS = ("selector", "sequence", "reasoner")
LEAF_KINDS = ("condition", "action")


class NodeStatus(Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    RUNNING = "running"


class ExecutionFault(RuntimeError):
    """Unresolved id or corrupt state hit at tick time; validation should
    have made this impossible."""


@dataclass(frozen=True)
class BehaviorNode:
    kind: str
    children: tuple["BehaviorNode", ...] = ()
    ref: str | None = None  # condition/action name
    utilities: tuple[str, ...] = ()  # reasoner: one scorer name per child
    recheck_guards: bool = False  # reserved: resuming ticks skip guards when False


def selector(*children: BehaviorNode) -> BehaviorNode:
    return BehaviorNode("selector", children=tuple(children))


def sequence(*children: BehaviorNode) -> BehaviorNode:
    return BehaviorNode("sequence", children=tuple(children))


def condition(name: str) -> BehaviorNode:
    return BehaviorNode("condition", ref=name)


def action(name: str) -> BehaviorNode:
    return BehaviorNode("action", ref=name)


def reasoner(*pairs: tuple[BehaviorNode, str]) -> BehaviorNode:
    """Build a reasoner from (child, utility-name) pairs."""
    children = tuple(child for child, _ in pairs)
    utilities = tuple(name for _, name in pairs)
    return BehaviorNode("reasoner", children=children, utilities=utilities)


class Blackboard(dict):
    """Key->value snapshot of agent observations, built fresh each tick so
    every read within one tick sees consistent data."""


@dataclass
class TreeState:
    """Per-agent tick bookkeeping: the resume bookmark plus per-node scratch
    (sequence cursors, keyed by node path)."""

    bookmark: tuple[int, ...] | None = None
    node_memory: dict[tuple[int, ...], object] = field(default_factory=dict)


def reset(state: TreeState) -> TreeState:
    """Clear the bookmark and all per-node scratch. Idempotent."""
    state.bookmark = None
    state.node_memory.clear()
    return state


@dataclass(frozen=True)
class Diagnostic:
    path: tuple[int, ...]
    message: str


class Registry:
    """Named behaviours: condition predicates, action bodies, and utility
    scorers, each taking the blackboard."""

    def __init__(self) -> None:
        self.conditions: dict[str, Callable[[Blackboard], bool]] = {}
        self.actions: dict[str, Callable[[Blackboard], NodeStatus]] = {}
        self.utilities: dict[str, Callable[[Blackboard], float]] = {}

    def register_condition(self, name: str, fn: Callable[[Blackboard], bool]) -> None:
        self.conditions[name] = fn

    def register_action(self, name: str, fn: Callable[[Blackboard], NodeStatus]) -> None:
        self.actions[name] = fn

    def register_utility(self, name: str, fn: Callable[[Blackboard], float]) -> None:
        self.utilities[name] = fn


@dataclass
class ReasonerDecision:
    path: tuple[int, ...]
    scores: tuple[float, ...] | None  # None when the choice was pinned by resume
    probabilities: tuple[float, ...] | None
    chosen: int
    pinned: bool


@dataclass
class TickTrace:
    """Optional instrumentation: the ordered registry calls and reasoner
    decisions made during one tick."""

    calls: list[tuple[str, str]] = field(default_factory=list)
    decisions: list[ReasonerDecision] = field(default_factory=list)

    def count(self, kind: str, name: str) -> int:
        return self.calls.count((kind, name))


def validate(tree: BehaviorNode, registry: Registry) -> list[Diagnostic]:
    """Check every structural invariant and id resolution; an empty result
    means the tree is safe to tick."""
    out: list[Diagnostic] = []

    def walk(node: BehaviorNode, path: tuple[int, ...]) -> None:
        if len(path) >= MAX_DEPTH:
            out.append(Diagnostic(path, f"tree depth exceeds the cap of {MAX_DEPTH}"))
            return
        if node.kind in COMPOSITE_KINDS:
            if not node.children:
                out.append(Diagnostic(path, f"empty composite: {node.kind} needs at least one child"))
            if node.kind == "reasoner" and len(node.utilities) != len(node.children):
                out.append(Diagnostic(
                    path,
                    f"reasoner arity mismatch: {len(node.children)} children"
                    f" but {len(node.utilities)} utility ids",
                ))
            if node.kind == "reasoner":
                for name in node.utilities:
                    if name not in registry.utilities:
                        out.append(Diagnostic(path, f"unknown utility id {name!r}"))
            for i, child in enumerate(node.children):
                walk(child, path + (i,))
        elif node.kind in LEAF_KINDS:
            if node.children:
                out.append(Diagnostic(path, f"{node.kind} must be a leaf"))
            if not node.ref:
                out.append(Diagnostic(path, f"{node.kind} is missing its name"))
            elif node.kind == "condition" and node.ref not in registry.conditions:
                out.append(Diagnostic(path, f"unknown condition id {node.ref!r}"))
            elif node.kind == "action" and node.ref not in registry.actions:
                out.append(Diagnostic(path, f"unknown action id {node.ref!r}"))
        else:
            out.append(Diagnostic(path, f"unknown node kind {node.kind!r}"))

    walk(tree, ())
    return out


class _Holder:
    __slots__ = ("path",)

    def __init__(self) -> None:
        self.path: tuple[int, ...] | None = None


def tick(
    tree: BehaviorNode,
    state: TreeState,
    bb: Blackboard,
    rng: Random,
    registry: Registry,
    trace: TickTrace | None = None,
) -> NodeStatus:
    """Evaluate the tree once, honoring any resume bookmark in ``state``.

    The bookmark is updated to the new RUNNING leaf, or cleared when the
    root settles on SUCCESS or FAILURE.
    """
    holder = _Holder()
    status = _tick_node(tree, (), state.bookmark, state, bb, rng, registry, trace, holder)
    if status is NodeStatus.RUNNING:
        if holder.path is None:
            raise ExecutionFault("RUNNING status without a running leaf")
        state.bookmark = holder.path
    else:
        state.bookmark = None
    return status


def _tick_node(
    node: BehaviorNode,
    path: tuple[int, ...],
    resume: tuple[int, ...] | None,
    state: TreeState,
    bb: Blackboard,
    rng: Random,
    registry: Registry,
    trace: TickTrace | None,
    holder: _Holder,
) -> NodeStatus:
    if len(path) >= MAX_DEPTH:
        raise ExecutionFault(f"tick descended past the depth cap of {MAX_DEPTH}")

    if node.kind == "condition":
        fn = registry.conditions.get(node.ref or "")
        if fn is None:
            raise ExecutionFault(f"unresolved condition id {node.ref!r}")
        if trace is not None:
            trace.calls.append(("condition", node.ref or ""))
        return NodeStatus.SUCCESS if fn(bb) else NodeStatus.FAILURE

    if node.kind == "action":
        fn = registry.actions.get(node.ref or "")
        if fn is None:
            raise ExecutionFault(f"unresolved action id {node.ref!r}")
        if trace is not None:
            trace.calls.append(("action", node.ref or ""))
        status = fn(bb)
        if not isinstance(status, NodeStatus):
            raise ExecutionFault(f"action {node.ref!r} returned {status!r}, not a NodeStatus")
        if status is NodeStatus.RUNNING:
            holder.path = path
        return status

    if node.kind == "selector":
        start = _resume_index(node, resume)
        for i in range(start, len(node.children)):
            sub = _resume_suffix(resume, i)
            status = _tick_node(node.children[i], path + (i,), sub, state, bb, rng, registry, trace, holder)
            if status is not NodeStatus.FAILURE:
                return status
        return NodeStatus.FAILURE

    if node.kind == "sequence":
        start = _resume_index(node, resume)
        for i in range(start, len(node.children)):
            sub = _resume_suffix(resume, i)
            status = _tick_node(node.children[i], path + (i,), sub, state, bb, rng, registry, trace, holder)
            if status is NodeStatus.FAILURE:
                state.node_memory.pop(path, None)
                return NodeStatus.FAILURE
            if status is NodeStatus.RUNNING:
                state.node_memory[path] = i  # cursor for inspection
                return NodeStatus.RUNNING
        state.node_memory.pop(path, None)
        return NodeStatus.SUCCESS

    if node.kind == "reasoner":
        if resume:
            # A bookmark through a reasoner pins the previous choice: no
            # re-scoring, no resampling.
            chosen = resume[0]
            if chosen >= len(node.children):
                raise ExecutionFault("bookmark does not address a valid child")
            if trace is not None:
                trace.decisions.append(ReasonerDecision(path, None, None, chosen, pinned=True))
            return _tick_node(
                node.children[chosen], path + (chosen,), resume[1:],
                state, bb, rng, registry, trace, holder,
            )
        scores: list[float] = []
        for name in node.utilities:
            fn = registry.utilities.get(name)
            if fn is None:
                raise ExecutionFault(f"unresolved utility id {name!r}")
            if trace is not None:
                trace.calls.append(("utility", name))
            value = float(fn(bb))
            if not math.isfinite(value) or value < 0:
                raise ExecutionFault(f"utility {name!r} returned invalid score {value!r}")
            scores.append(value)
        probs = normalize(scores)  # all-zero scores fall back to uniform
        chosen = _sample_index(probs, rng)
        if trace is not None:
            trace.decisions.append(
                ReasonerDecision(path, tuple(scores), tuple(probs), chosen, pinned=False)
            )
        return _tick_node(
            node.children[chosen], path + (chosen,), None,
            state, bb, rng, registry, trace, holder,
        )

    raise ExecutionFault(f"unknown node kind {node.kind!r}")


def _resume_index(node: BehaviorNode, resume: tuple[int, ...] | None) -> int:
    if not resume:
        return 0
    if resume[0] >= len(node.children):
        raise ExecutionFault("bookmark does not address a valid child")
    return resume[0]


def _resume_suffix(resume: tuple[int, ...] | None, child: int) -> tuple[int, ...] | None:
    if resume and child == resume[0]:
        return resume[1:]
    return None


def _sample_index(probs: list[float], rng: Random) -> int:
    """Inverse-CDF sample over children in declaration order."""
    r = rng.random()
    cumulative = 0.0
    for i, p in enumerate(probs):
        cumulative += p
        if r < cumulative:
            return i
    return len(probs) - 1  # guard against float round-off at the tail
