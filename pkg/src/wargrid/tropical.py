"""Max-plus / min-plus piecewise-linear view of positive polynomials.

A term c * x^a of a positive-coefficient polynomial maps to the affine
form ln(c) + <a, X> in log coordinates (X = ln x). Under max-plus the
pointwise maximum of those forms sandwiches the true log-value:

    trop(X) <= ln p(x) <= trop(X) + ln K      (K = number of terms)

which makes the tropical surrogate a cheap, exactly-optimizable stand-in:
it is convex (max-plus) or concave (min-plus), so box extrema sit on
vertices. This module converts, evaluates, locates the dominating term,
optimizes over boxes, and samples dominance regions for a rough sketch of
where each term wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .polynomial import SymbolicPoly

#: Exhaustive vertex enumeration is refused beyond this many dimensions.
MAX_VERTEX_DIMS = 20

#: region_sample refuses grids beyond this many points.
MAX_REGION_POINTS = 10**6

_VERTEX_CHUNK = 1 << 14


class Convention(Enum):
    MAX_PLUS = "max"
    MIN_PLUS = "min"


class SizeError(ValueError):
    """A guard on problem size tripped; the message names the fast path."""


@dataclass(frozen=True)
class TropicalPoly:
    """Affine forms coeff_k + <exponents_k, X>, combined by max or min."""

    coeffs: tuple[float, ...]
    exponents: tuple[tuple[int, ...], ...]
    variables: tuple[str, ...] = ()
    convention: Convention = Convention.MAX_PLUS

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a tropical polynomial needs at least one term")
        if len(self.coeffs) != len(self.exponents):
            raise ValueError("one exponent vector per coefficient")
        dims = {len(e) for e in self.exponents}
        if len(dims) != 1:
            raise ValueError("exponent vectors must share one dimension")
        if self.variables and len(self.variables) != dims.pop():
            raise ValueError("variable names must match the dimension")
        if len(set(self.exponents)) != len(self.exponents):
            raise ValueError("exponent vectors must be distinct")
        for vec in self.exponents:
            for e in vec:
                if e < 0:
                    raise ValueError("exponents must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.exponents[0])

    def _matrices(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(self.coeffs, dtype=float),
            np.asarray(self.exponents, dtype=float),
        )


@dataclass(frozen=True)
class Box:
    """Axis-aligned closed box in log coordinates."""

    lows: tuple[float, ...]
    highs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lows) != len(self.highs):
            raise ValueError("lows and highs must share one dimension")
        for lo, hi in zip(self.lows, self.highs):
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")

    @property
    def dim(self) -> int:
        return len(self.lows)


def tropicalize(
    poly: SymbolicPoly,
    variables: Sequence[str] | None = None,
    convention: Convention = Convention.MAX_PLUS,
) -> TropicalPoly:
    """Map each term c * x^a to the form (ln c, a).

    Every coefficient must be strictly positive (the log valuation is
    undefined otherwise). ``variables`` fixes the axis order; defaults to
    the polynomial's sorted variable names. Terms are listed in ascending
    total degree, ties in ascending lexicographic exponent order over the
    chosen axes.
    """
    if poly.is_zero():
        raise ValueError("cannot tropicalize the zero polynomial")
    names = tuple(variables) if variables is not None else poly.variables()
    if set(poly.variables()) - set(names):
        missing = set(poly.variables()) - set(names)
        raise ValueError(f"axis order is missing variables {sorted(missing)}")
    terms = []
    for key, coeff in poly.terms():
        if coeff <= 0:
            raise ValueError(f"coefficient {coeff!r} is not positive; log undefined")
        exps = dict(key)
        vec = tuple(exps.get(name, 0) for name in names)
        terms.append((sum(vec), vec, math.log(coeff)))
    terms.sort(key=lambda t: (t[0], t[1]))
    return TropicalPoly(
        coeffs=tuple(c for _, _, c in terms),
        exponents=tuple(vec for _, vec, _ in terms),
        variables=names,
        convention=convention,
    )


def _values_at(tp: TropicalPoly, point: Sequence[float]) -> np.ndarray:
    pt = np.asarray(point, dtype=float)
    if pt.shape != (tp.dim,):
        raise ValueError(f"point has dimension {pt.shape}, expected ({tp.dim},)")
    coeffs, expo = tp._matrices()
    return coeffs + expo @ pt


def trop_eval(tp: TropicalPoly, point: Sequence[float]) -> float:
    """Max (or min) of the affine forms at a point."""
    values = _values_at(tp, point)
    return float(values.max() if tp.convention is Convention.MAX_PLUS else values.min())


def argmax_term(tp: TropicalPoly, point: Sequence[float]) -> int:
    """Index of the term attaining the extremum; ties go to the lowest index."""
    values = _values_at(tp, point)
    if tp.convention is Convention.MAX_PLUS:
        return int(np.argmax(values))
    return int(np.argmin(values))


def _check_box(tp: TropicalPoly, box: Box) -> None:
    if box.dim != tp.dim:
        raise ValueError(f"box dimension {box.dim} does not match polynomial dimension {tp.dim}")


def extremum_over_box(tp: TropicalPoly, box: Box) -> tuple[float, tuple[float, ...]]:
    """Exact box optimum by vertex enumeration.

    Max-plus maximizes (convex case), min-plus minimizes (concave case);
    either way the optimum sits on a vertex. Returns the optimum and the
    first optimal vertex in lexicographic low-before-high order. Refuses
    d > 20; extremum_over_box_fast handles any dimension analytically.
    """
    _check_box(tp, box)
    d = tp.dim
    if d > MAX_VERTEX_DIMS:
        raise SizeError(
            f"{d} dimensions means 2^{d} vertices; use extremum_over_box_fast,"
            " whose per-term closed form gives the same optimum"
        )
    coeffs, expo = tp._matrices()
    lows = np.asarray(box.lows)
    spans = np.asarray(box.highs) - lows
    maximize = tp.convention is Convention.MAX_PLUS
    shifts = d - 1 - np.arange(d)

    best_value: float | None = None
    best_vertex: np.ndarray | None = None
    for start in range(0, 1 << d, _VERTEX_CHUNK):
        idx = np.arange(start, min(start + _VERTEX_CHUNK, 1 << d))
        bits = (idx[:, None] >> shifts) & 1  # row order == lexicographic lo-before-hi
        vertices = lows + bits * spans
        forms = vertices @ expo.T + coeffs
        values = forms.max(axis=1) if maximize else forms.min(axis=1)
        pick = int(np.argmax(values) if maximize else np.argmin(values))
        value = float(values[pick])
        if best_value is None or (value > best_value if maximize else value < best_value):
            best_value = value
            best_vertex = vertices[pick]
    assert best_value is not None and best_vertex is not None
    return best_value, tuple(float(v) for v in best_vertex)


def extremum_over_box_fast(tp: TropicalPoly, box: Box) -> tuple[float, tuple[float, ...]]:
    """Per-term closed form: each affine form's box optimum is analytic,
    and the best of those equals the global box optimum. Any dimension."""
    _check_box(tp, box)
    coeffs, expo = tp._matrices()
    lows = np.asarray(box.lows)
    highs = np.asarray(box.highs)
    maximize = tp.convention is Convention.MAX_PLUS
    # Exponents are nonnegative, but keep the general sign logic so the
    # closed form stays correct for any affine forms.
    if maximize:
        per_term = coeffs + np.where(expo >= 0, expo * highs, expo * lows).sum(axis=1)
        best = int(np.argmax(per_term))
        vertex = np.where(expo[best] > 0, highs, lows)  # zero axes prefer the low end
    else:
        per_term = coeffs + np.where(expo >= 0, expo * lows, expo * highs).sum(axis=1)
        best = int(np.argmin(per_term))
        vertex = np.where(expo[best] < 0, highs, lows)
    return float(per_term[best]), tuple(float(v) for v in vertex)


def region_sample(
    tp: TropicalPoly, box: Box, resolution: int | Sequence[int]
) -> np.ndarray:
    """Label a regular grid over the box with the dominating term index.

    Returns an integer array shaped by the per-axis resolution; ties take
    the lowest term index. The label map is the rough sketch of which
    term's region each point belongs to.
    """
    _check_box(tp, box)
    if isinstance(resolution, int):
        res = [resolution] * tp.dim
    else:
        res = list(resolution)
    if len(res) != tp.dim:
        raise ValueError("one resolution per axis")
    for r in res:
        if r < 2:
            raise ValueError("resolution must be at least 2 per axis")
    total = math.prod(res)
    if total > MAX_REGION_POINTS:
        raise SizeError(f"{total} grid points exceeds the budget of {MAX_REGION_POINTS}")
    axes = [np.linspace(lo, hi, r) for lo, hi, r in zip(box.lows, box.highs, res)]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.reshape(-1) for m in mesh], axis=1)
    coeffs, expo = tp._matrices()
    forms = points @ expo.T + coeffs
    if tp.convention is Convention.MAX_PLUS:
        labels = np.argmax(forms, axis=1)
    else:
        labels = np.argmin(forms, axis=1)
    return labels.reshape(res)
