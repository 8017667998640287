"""Brute-force periodic-point counts for piecewise-linear maps in exact rationals.

The iterate ``f^m`` is built by pulling the breakpoints of ``f`` back through
every piece of ``f^(m-1)``; solutions of ``f^m(x) = +-x`` are then found
piece by piece with exact linear solves.  Nothing here relies on the
symbolic machinery, which is the point: it is the independent oracle.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

from .errors import BudgetExceeded, DomainError, InfiniteSolutions, OutOfDomain
from .numtheory import IntegerSequence, census

__all__ = [
    "Rational",
    "PLMap",
    "LapList",
    "DEFAULT_LAP_BUDGET",
    "as_rational",
    "make_fn",
    "evaluate",
    "canonicalize",
    "iterate_laps",
    "iter_iterates",
    "solutions",
    "count_solutions",
    "oracle_sequence",
    "oracle_census",
]

# exact rationals; gmpy2's mpq is roughly 5x faster than Fraction here
Rational = _rational
DEFAULT_LAP_BUDGET = 5_000_000

Number = Union[int, str, Fraction, Rational]


def as_rational(v: Number) -> Rational:
    if isinstance(v, Fraction) and Rational is not Fraction:
        return Rational(v.numerator, v.denominator)
    return Rational(v)


class _Piecewise:
    xs: tuple
    ys: tuple

    def __call__(self, x: Number) -> Rational:
        x = as_rational(x)
        xs, ys = self.xs, self.ys
        if x < xs[0] or x > xs[-1]:
            raise OutOfDomain(f"{x} outside [{xs[0]}, {xs[-1]}]")
        i = bisect_left(xs, x)
        if xs[i] == x:
            return ys[i]
        x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    @property
    def domain(self) -> tuple[Rational, Rational]:
        return self.xs[0], self.xs[-1]


@dataclass(frozen=True, init=False)
class PLMap(_Piecewise):
    """Continuous piecewise-linear map given by its nodes ``(x_i, y_i)``."""

    xs: tuple[Rational, ...]
    ys: tuple[Rational, ...]

    def __init__(self, nodes: Sequence[tuple[Number, Number]]):
        if len(nodes) < 2:
            raise DomainError("a piecewise-linear map needs at least two nodes")
        xs = tuple(as_rational(x) for x, _ in nodes)
        ys = tuple(as_rational(y) for _, y in nodes)
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise DomainError("node x-coordinates must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @property
    def nodes(self) -> tuple[tuple[Rational, Rational], ...]:
        return tuple(zip(self.xs, self.ys))

    def is_self_map(self) -> bool:
        lo, hi = self.domain
        return all(lo <= y <= hi for y in self.ys)

    def __repr__(self) -> str:
        return "PLMap([" + ", ".join(f"({x}, {y})" for x, y in self.nodes) + "])"


@dataclass(frozen=True)
class LapList(_Piecewise):
    """Linear pieces of ``f^order`` as shared breakpoints ``xs`` with values ``ys``.

    Piece ``i`` runs from ``(xs[i], ys[i])`` to ``(xs[i+1], ys[i+1])``, so
    neighbouring pieces share endpoints by construction.  Pieces are split at
    every pulled-back node of the base map; adjacent pieces may be collinear.
    """

    order: int
    xs: tuple[Rational, ...]
    ys: tuple[Rational, ...]

    def __len__(self) -> int:
        return len(self.xs) - 1

    @property
    def laps(self) -> Iterator[tuple[Rational, Rational, Rational, Rational]]:
        xs, ys = self.xs, self.ys
        return ((xs[i], xs[i + 1], ys[i], ys[i + 1]) for i in range(len(xs) - 1))

    def check(self) -> None:
        """Raise ``AssertionError`` if a piece is degenerate or coordinates are unsorted."""
        assert len(self.xs) == len(self.ys) >= 2
        assert all(a < b for a, b in zip(self.xs, self.xs[1:]))


def make_fn(n: int) -> PLMap:
    """``x + 1`` on ``[1, n-1]`` and the steep decreasing branch back to 1 on ``[n-1, n]``."""
    if n < 3:
        raise DomainError(f"f_n needs n >= 3, got {n}")
    return PLMap([(i, i + 1) for i in range(1, n)] + [(n, 1)])


def evaluate(f: _Piecewise, x: Number) -> Rational:
    return f(x)


def canonicalize(f: PLMap) -> PLMap:
    """Drop interior nodes that are collinear with their neighbours."""
    nodes = list(f.nodes)
    kept = [nodes[0]]
    for i in range(1, len(nodes) - 1):
        (x0, y0), (x1, y1), (x2, y2) = kept[-1], nodes[i], nodes[i + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            kept.append(nodes[i])
    kept.append(nodes[-1])
    return PLMap(kept)


def _refine(prev: LapList, f: PLMap, budget: int) -> LapList:
    bx, by = f.xs, f.ys
    image = dict(zip(bx, by))
    xs_in, ys_in = prev.xs, prev.ys
    xs = [xs_in[0]]
    ys = [f(ys_in[0])]
    for i in range(len(xs_in) - 1):
        x0, x1, y0, y1 = xs_in[i], xs_in[i + 1], ys_in[i], ys_in[i + 1]
        if y0 != y1:
            if y0 < y1:
                inner = bx[bisect_right(bx, y0):bisect_left(bx, y1)]
            else:
                inner = bx[bisect_right(bx, y1):bisect_left(bx, y0)][::-1]
            if inner:
                scale = (x1 - x0) / (y1 - y0)
                for t in inner:
                    xs.append(x0 + (t - y0) * scale)
                    ys.append(image[t])
        xs.append(x1)
        ys.append(image[y1] if y1 in image else f(y1))
        if len(xs) - 1 > budget:
            raise BudgetExceeded(f"f^{prev.order + 1} has more than {budget} laps")
    return LapList(prev.order + 1, tuple(xs), tuple(ys))


def iter_iterates(f: PLMap, mmax: int, budget: int = DEFAULT_LAP_BUDGET) -> Iterator[LapList]:
    """Yield the lap lists of ``f, f^2, ..., f^mmax``."""
    if not f.is_self_map():
        raise DomainError("iteration needs a self-map of its domain")
    laps = LapList(1, f.xs, f.ys)
    if len(laps) > budget:
        raise BudgetExceeded(f"f has more than {budget} laps")
    for m in range(1, mmax + 1):
        if m > 1:
            laps = _refine(laps, f, budget)
        yield laps


def iterate_laps(f: PLMap, m: int, budget: int = DEFAULT_LAP_BUDGET) -> LapList:
    if m < 1:
        raise DomainError(f"iterate order must be >= 1, got {m}")
    for laps in iter_iterates(f, m, budget):
        pass
    return laps


def solutions(laps: LapList, sign: int = 1) -> list[Rational]:
    """Sorted distinct ``x`` with ``f^m(x) = sign * x``."""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    found = set()
    xs, ys = laps.xs, laps.ys
    # g(x) = f^m(x) - sign*x is linear on each piece; g0/g1 are its end values
    g1 = ys[0] - sign * xs[0]
    for i in range(len(xs) - 1):
        g0, g1 = g1, ys[i + 1] - sign * xs[i + 1]
        if g0 == 0 and g1 == 0:
            raise InfiniteSolutions(f"f^{laps.order} agrees with y = {sign:+d}x on [{xs[i]}, {xs[i + 1]}]")
        if g0 == 0:
            found.add(xs[i])
        elif g1 == 0:
            found.add(xs[i + 1])
        elif (g0 < 0) != (g1 < 0):
            found.add(xs[i] + g0 * (xs[i + 1] - xs[i]) / (g0 - g1))
    return sorted(found)


def count_solutions(f: PLMap, m: int, sign: int = 1, budget: int = DEFAULT_LAP_BUDGET) -> int:
    return len(solutions(iterate_laps(f, m, budget), sign))


def oracle_sequence(f: PLMap, mmax: int, sign: int = 1,
                    budget: int = DEFAULT_LAP_BUDGET) -> IntegerSequence:
    """Solution counts for ``m = 1..mmax`` from one incremental pass."""
    counts = [len(solutions(laps, sign)) for laps in iter_iterates(f, mmax, budget)]
    label = "oracle" if sign == 1 else "oracle (-x)"
    return IntegerSequence.from_values(counts, label)


def oracle_census(f: PLMap, mmax: int, budget: int = DEFAULT_LAP_BUDGET) -> list[tuple[int, int]]:
    """``(Phi_1 value, orbit count)`` for each minimal period ``1..mmax``."""
    seq = oracle_sequence(f, mmax, 1, budget)
    return [census(seq, m, "fixed") for m in range(1, mmax + 1)]
