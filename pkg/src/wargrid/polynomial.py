"""Multivariate polynomials with named variables, in canonical merged form.

Terms are kept as a mapping from exponent signatures (sorted (variable,
exponent) pairs, exponents > 0) to coefficients; like terms merge on
every operation and zero coefficients vanish, so structurally equal
polynomials compare equal and print identically.

Canonical term order: ascending total degree, then descending
lexicographic exponent vector over the polynomial's sorted variable
names. Within a term, variables print alphabetically: ``2*n^2*x``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

#: Exponent signature: sorted ((variable, exponent), ...) with exponent > 0.
TermKey = tuple[tuple[str, int], ...]

_NUM_RE = re.compile(r"\d+(?:\.\d+)?")
_NAME_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*")


class PolynomialSyntaxError(ValueError):
    """Raised by parse_polynomial with a 1-based column position."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"column {column}: {message}")
        self.column = column


class SymbolicPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TermKey, float] | None = None) -> None:
        canonical: dict[TermKey, float] = {}
        for key, coeff in (terms or {}).items():
            cleaned = tuple(sorted((v, e) for v, e in key if e != 0))
            for v, e in cleaned:
                if e < 0:
                    raise ValueError(f"negative exponent on {v!r}")
            if coeff != 0:
                canonical[cleaned] = canonical.get(cleaned, 0) + coeff
        self._terms = {k: c for k, c in canonical.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SymbolicPoly":
        return cls()

    @classmethod
    def constant(cls, value: float) -> "SymbolicPoly":
        return cls({(): value})

    @classmethod
    def variable(cls, name: str) -> "SymbolicPoly":
        if not _NAME_RE.fullmatch(name):
            raise ValueError(f"invalid variable name {name!r}")
        return cls({((name, 1),): 1})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> tuple[str, ...]:
        names = {v for key in self._terms for v, _ in key}
        return tuple(sorted(names))

    def terms(self) -> Iterator[tuple[TermKey, float]]:
        """Terms in canonical order."""
        names = self.variables()

        def sort_key(item: tuple[TermKey, float]):
            exps = dict(item[0])
            vec = tuple(exps.get(v, 0) for v in names)
            return (sum(vec), tuple(-e for e in vec))

        return iter(sorted(self._terms.items(), key=sort_key))

    def coefficient(self, key: TermKey) -> float:
        return self._terms.get(tuple(sorted((v, e) for v, e in key if e != 0)), 0)

    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e for _, e in key) for key in self._terms)

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        """Numeric value at a point; every variable must be assigned."""
        total = 0.0
        for key, coeff in self._terms.items():
            value = float(coeff)
            for name, exp in key:
                value *= assignment[name] ** exp
            total += value
        return total

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "SymbolicPoly") -> "SymbolicPoly":
        if not isinstance(other, SymbolicPoly):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return SymbolicPoly(merged)

    def __mul__(self, other):
        if isinstance(other, SymbolicPoly):
            product: dict[TermKey, float] = {}
            for k1, c1 in self._terms.items():
                for k2, c2 in other._terms.items():
                    exps = dict(k1)
                    for v, e in k2:
                        exps[v] = exps.get(v, 0) + e
                    key = tuple(sorted(exps.items()))
                    product[key] = product.get(key, 0) + c1 * c2
            return SymbolicPoly(product)
        if isinstance(other, (int, float)):
            return SymbolicPoly({k: c * other for k, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "SymbolicPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = SymbolicPoly.constant(1)
        for _ in range(power):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- rendering ---------------------------------------------------------

    def canonical_str(self) -> str:
        if self.is_zero():
            return "0"
        rendered = []
        for key, coeff in self.terms():
            factors = []
            for name, exp in sorted(key):
                factors.append(name if exp == 1 else f"{name}^{exp}")
            c = _format_coeff(coeff)
            if not factors:
                rendered.append(c)
            elif c == "1":
                rendered.append("*".join(factors))
            else:
                rendered.append("*".join([c] + factors))
        return " + ".join(rendered)

    def __str__(self) -> str:
        return self.canonical_str()

    def __repr__(self) -> str:
        return f"SymbolicPoly({self.canonical_str()!r})"


def _format_coeff(coeff: float) -> str:
    if isinstance(coeff, float) and coeff.is_integer():
        return str(int(coeff))
    return str(coeff)


def poly_compose(a: Iterable[SymbolicPoly], x: Iterable[SymbolicPoly]) -> SymbolicPoly:
    """Inner product sum(a_i * x_i) of two equal-length polynomial vectors,
    merged into canonical form."""
    a = list(a)
    x = list(x)
    if len(a) != len(x):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(x)}")
    total = SymbolicPoly.zero()
    for ai, xi in zip(a, x):
        total = total + ai * xi
    return total


def parse_polynomial(text: str) -> SymbolicPoly:
    """Parse plain text like ``2*x*y^3 + x + n^2`` into a SymbolicPoly.

    Grammar: terms joined by + or -, each term a '*'-separated product of
    numbers and variables with optional ^integer powers. Errors carry a
    1-based column.
    """
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_factor() -> SymbolicPoly:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise PolynomialSyntaxError("expected a number or variable", pos + 1)
        m = _NUM_RE.match(text, pos)
        if m:
            pos = m.end()
            value = float(m.group())
            return SymbolicPoly.constant(int(value) if value.is_integer() else value)
        m = _NAME_RE.match(text, pos)
        if m:
            pos = m.end()
            base = SymbolicPoly.variable(m.group())
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                em = re.compile(r"\d+").match(text, pos)
                if not em:
                    raise PolynomialSyntaxError("expected an integer exponent after '^'", pos + 1)
                pos = em.end()
                base = base ** int(em.group())
            return base
        raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos + 1)

    def parse_term() -> SymbolicPoly:
        nonlocal pos
        term = parse_factor()
        while True:
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                term = term * parse_factor()
            else:
                return term

    skip_ws()
    negate = False
    if pos < n and text[pos] in "+-":
        negate = text[pos] == "-"
        pos += 1
    total = parse_term() * (-1 if negate else 1)
    while True:
        skip_ws()
        if pos >= n:
            return total
        if text[pos] == "+":
            pos += 1
            total = total + parse_term()
        elif text[pos] == "-":
            pos += 1
            total = total + parse_term() * -1
        else:
            raise PolynomialSyntaxError(f"expected '+' or '-', got {text[pos]!r}", pos + 1)
