"""Strategy-row scoring and exact favorable-outcome probabilities.

A strategy row holds one nonnegative payoff per strategy; an emphasis
vector draws each weight from the finite grid {0, 1/(L-1), ..., 1}. The
probability that the dot product clears a target is counted exactly over
the grid, either by full enumeration or by a partial-sum dynamic program
over quantized entries. All probabilities are exact rationals so the two
routes can be compared for equality, not closeness.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

#: Enumeration is refused beyond this many grid points.
ENUMERATION_GUARD = 10**7

#: Default quantization denominator for the dynamic-programming route.
DEFAULT_DENOMINATOR = 1000

SENSES = (">=", "<=")


class EnumerationGuardError(ValueError):
    """Grid too large to enumerate; use favorable_probability_dp instead."""


@dataclass(frozen=True)
class StrategyMatrix:
    """M rows of N nonnegative payoffs (the initial model fixes M=1)."""

    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("matrix needs at least one row")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise ValueError("rows must share one length")
            for a in row:
                if a < 0:
                    raise ValueError(f"entries must be nonnegative, got {a!r}")

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row(self, i: int = 0) -> tuple[float, ...]:
        return self.rows[i]


def emphasis_grid(levels: int) -> tuple[Fraction, ...]:
    """The L evenly spaced emphasis values {0, 1/(L-1), ..., 1}."""
    if levels < 2:
        raise ValueError("grid needs at least 2 levels")
    return tuple(Fraction(k, levels - 1) for k in range(levels))


def score(row: Sequence, emphasis: Sequence):
    """Dot product sum(a_i * x_i); exact when given exact inputs."""
    if len(row) != len(emphasis):
        raise ValueError(f"dimension mismatch: {len(row)} vs {len(emphasis)}")
    return sum(a * x for a, x in zip(row, emphasis))


def _check_sense(sense: str) -> None:
    if sense not in SENSES:
        raise ValueError(f"sense must be one of {SENSES}, got {sense!r}")


def _satisfies(value, threshold, sense: str) -> bool:
    return value >= threshold if sense == ">=" else value <= threshold


def favorable_probability(
    row: Sequence[float],
    threshold,
    sense: str = ">=",
    levels: int = 3,
    axis_levels: Sequence[int] | None = None,
) -> Fraction:
    """Exact fraction of emphasis-grid points whose score clears the target.

    ``axis_levels`` overrides the level count per coordinate; a coordinate
    collapsed to one level contributes only the value 0, which is how a
    zero payoff entry reduces the effective dimension.
    """
    _check_sense(sense)
    if not row:
        raise ValueError("row must be nonempty")
    axes = list(axis_levels) if axis_levels is not None else [levels] * len(row)
    if len(axes) != len(row):
        raise ValueError(f"dimension mismatch: {len(row)} vs {len(axes)}")
    for L in axes:
        if L < 1:
            raise ValueError("every axis needs at least one level")
    total = math.prod(axes)
    if total > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"{total} grid points exceeds the enumeration guard of"
            f" {ENUMERATION_GUARD}; use favorable_probability_dp"
        )
    exact_row = [Fraction(a) for a in row]
    for a in exact_row:
        if a < 0:
            raise ValueError("entries must be nonnegative")
    target = Fraction(threshold)
    grids = [emphasis_grid(L) if L >= 2 else (Fraction(0),) for L in axes]
    count = sum(
        1
        for combo in product(*grids)
        if _satisfies(score(exact_row, combo), target, sense)
    )
    return Fraction(count, total)


def quantize_row(
    row: Sequence[float], denominator: int = DEFAULT_DENOMINATOR
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Round entries to multiples of 1/denominator.

    Returns the quantized row and the worst-case score error bound
    N/(2*denominator) valid for any emphasis vector in [0, 1]^N.
    """
    if denominator < 1:
        raise ValueError("denominator must be positive")
    quantized = tuple(
        Fraction(round(Fraction(a) * denominator), denominator) for a in row
    )
    return quantized, Fraction(len(list(row)), 2 * denominator)


def favorable_probability_dp(
    row: Sequence[float],
    threshold,
    sense: str = ">=",
    levels: int = 3,
    denominator: int = DEFAULT_DENOMINATOR,
) -> Fraction:
    """Same count as favorable_probability on the quantized row, via a
    dynamic program over achievable partial sums.

    With entries n_i/D and grid values k/(L-1), the score comparison scales to
    integers: sum(n_i * k_i) against threshold * D * (L-1). States are
    (strategy index, partial-sum numerator); cost O(N * L * distinct sums).
    """
    _check_sense(sense)
    if not row:
        raise ValueError("row must be nonempty")
    if levels < 2:
        raise ValueError("grid needs at least 2 levels")
    quantized, _ = quantize_row(row, denominator)
    numerators = [int(q * denominator) for q in quantized]
    for num in numerators:
        if num < 0:
            raise ValueError("entries must be nonnegative")

    counts: dict[int, int] = {0: 1}
    for num in numerators:
        nxt: dict[int, int] = defaultdict(int)
        for partial, ways in counts.items():
            for k in range(levels):
                nxt[partial + num * k] += ways
        counts = dict(nxt)

    bound = Fraction(threshold) * denominator * (levels - 1)
    good = sum(ways for partial, ways in counts.items() if _satisfies(partial, bound, sense))
    return Fraction(good, levels ** len(numerators))


def effective_support(row: Sequence[float]) -> int:
    """Number of strictly positive entries (n minus the zero count)."""
    return sum(1 for a in row if a > 0)


@dataclass(frozen=True)
class RankingTable:
    """Running payoff averages plus the ranks they induce (1 = best;
    ties break toward the lower strategy index)."""

    averages: tuple[float, ...]
    ranks: tuple[int, ...]
    updates: int = 0

    @classmethod
    def create(cls, n: int, initial: float = 0.0) -> "RankingTable":
        if n < 1:
            raise ValueError("table needs at least one strategy")
        averages = (float(initial),) * n
        return cls(averages=averages, ranks=_ranks_of(averages))


def _ranks_of(averages: Sequence[float]) -> tuple[int, ...]:
    order = sorted(range(len(averages)), key=lambda i: (-averages[i], i))
    ranks = [0] * len(averages)
    for position, strategy in enumerate(order):
        ranks[strategy] = position + 1
    return tuple(ranks)


def rank_update(
    table: RankingTable, strategy: int, observed_payoff: float, learning_rate: float
) -> RankingTable:
    """Blend one observed payoff into the strategy's running average and
    recompute the ranking (exponential moving average, rate in (0, 1])."""
    if not 0 < learning_rate <= 1:
        raise ValueError("learning rate must be in (0, 1]")
    if not 0 <= strategy < len(table.averages):
        raise ValueError(f"no strategy {strategy} in a {len(table.averages)}-entry table")
    if not math.isfinite(observed_payoff):
        raise ValueError("payoff must be finite")
    averages = list(table.averages)
    averages[strategy] = (1 - learning_rate) * averages[strategy] + learning_rate * observed_payoff
    frozen = tuple(averages)
    return RankingTable(averages=frozen, ranks=_ranks_of(frozen), updates=table.updates + 1)
