"""Utility scoring for the bot's decision layer.

The aggression input folds threat, health and ammunition into one
nonnegative scalar x; the exponential curve e^{-x} splits any two-way
choice (the complement 1 - e^{-x} grows with diminishing returns), and
reload urgency grows as e^{1/magazine}, capped so an empty magazine stays
finite. Scores are turned into probabilities by straight normalization.

All functions here are pure and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

#: Saturation value for the reload curve, which diverges as the magazine
#: empties. Configurable per call; must exceed e (the full-magazine score).
DEFAULT_UTILITY_CAP = 1e6


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value!r}")


@dataclass(frozen=True)
class AgentVitals:
    """Normalized agent observation; every field lives in [0, 1].

    ``ammo`` is the fraction of all carried ammunition, ``magazine`` the
    fraction of the current magazine.
    """

    threat: float
    health: float
    ammo: float
    magazine: float = 1.0

    def __post_init__(self) -> None:
        _check_unit("threat", self.threat)
        _check_unit("health", self.health)
        _check_unit("ammo", self.ammo)
        _check_unit("magazine", self.magazine)


@dataclass(frozen=True)
class UtilityWeights:
    """Nonnegative mixing constants for the aggression input."""

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.alpha + self.beta + self.gamma <= 0:
            raise ValueError("at least one weight must be positive")


def aggression_input(vitals: AgentVitals, weights: UtilityWeights) -> float:
    """alpha*threat + beta*health + gamma*ammo; always >= 0."""
    return (
        weights.alpha * vitals.threat
        + weights.beta * vitals.health
        + weights.gamma * vitals.ammo
    )


def decay_utility(x: float) -> float:
    """e^{-x} for x >= 0: starts at 1 and decays strictly toward 0."""
    if x < 0:
        raise ValueError(f"aggression input must be nonnegative, got {x!r}")
    return math.exp(-x)


def binary_split(x: float) -> tuple[float, float]:
    """Split one unit of probability into (e^{-x}, 1 - e^{-x})."""
    f = decay_utility(x)
    return f, 1.0 - f


def reload_utility(magazine: float, cap: float = DEFAULT_UTILITY_CAP) -> float:
    """Reload urgency e^{1/magazine}, saturating at ``cap``.

    The curve diverges as the magazine empties; a magazine of exactly 0
    returns the cap itself so downstream arithmetic stays finite while the
    reload option still dominates every competitor.
    """
    if not 0.0 <= magazine <= 1.0:
        raise ValueError(f"magazine fraction must be in [0, 1], got {magazine!r}")
    if cap <= math.e:
        raise ValueError("cap must exceed e, the score of a full magazine")
    if magazine == 0.0:
        return cap
    exponent = 1.0 / magazine
    if exponent >= math.log(cap):  # exp() would overflow or exceed the cap
        return cap
    return math.exp(exponent)


def normalize(values: Sequence[float]) -> list[float]:
    """Scale nonnegative scores into probabilities summing to one.

    An all-zero vector falls back to the uniform distribution instead of
    dividing by zero.
    """
    if len(values) == 0:
        raise ValueError("cannot normalize an empty utility vector")
    out = [float(v) for v in values]
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"utility scores must be finite, got {v!r}")
        if v < 0:
            raise ValueError(f"utility scores must be nonnegative, got {v!r}")
    total = sum(out)
    if total == 0.0:
        return [1.0 / len(out)] * len(out)
    return [v / total for v in out]


# Default scorers for the cover options other than reload. Only reload has
# a prescribed curve; these are plain heuristics and any registered scorer
# may replace them (see the utility registry wiring in world.py).


def peek_fire_utility(threat: float) -> float:
    return 1.0 - 0.5 * threat


def blind_fire_utility(threat: float, ammo: float) -> float:
    return threat * ammo


def relocate_utility(threat: float, health: float) -> float:
    return threat * (1.0 - health)
