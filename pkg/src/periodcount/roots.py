"""Dominant positive roots of the growth polynomials and growth-rate estimates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath

from .errors import DomainError

__all__ = [
    "Polynomial",
    "RootBracket",
    "DEFAULT_TOL",
    "growth_polynomial",
    "dominant_root",
    "log_int",
    "growth_rate",
    "log_root",
    "growth_table",
]

DEFAULT_TOL = Fraction(1, 10 ** 12)


@dataclass(frozen=True)
class Polynomial:
    """Integer coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Union[int, Fraction]) -> Union[int, Fraction]:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "x"}.get(d, f"x^{d}")
            if d and mag != 1:
                body = f"{mag}*{body}"
            terms.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def growth_polynomial(kind: str, n: int) -> Polynomial:
    """``alpha``: ``x^(n-1) - (1 + x + ... + x^(n-2))``; ``beta``: ``x^(2n+1) - 2x^(2n-1) - 1``;
    ``gamma``: ``x^n - 2x^(n-1) - 1``."""
    if kind == "alpha":
        if n < 3:
            raise DomainError(f"alpha needs n >= 3, got {n}")
        return Polynomial(tuple([-1] * (n - 1) + [1]))
    if kind == "beta":
        if n < 1:
            raise DomainError(f"beta needs n >= 1, got {n}")
        c = [0] * (2 * n + 2)
        c[0], c[2 * n - 1], c[2 * n + 1] = -1, -2, 1
        return Polynomial(tuple(c))
    if kind == "gamma":
        if n < 2:
            raise DomainError(f"gamma needs n >= 2, got {n}")
        c = [0] * (n + 1)
        c[0], c[n - 1], c[n] = -1, -2, 1
        return Polynomial(tuple(c))
    raise DomainError(f"unknown root kind {kind!r}")


_START = {"alpha": (1, 2), "beta": (1, 2), "gamma": (2, 3)}


@dataclass(frozen=True)
class RootBracket:
    poly: Polynomial
    lo: Fraction
    hi: Fraction
    steps: int = 0

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def certified(self) -> bool:
        """Exact sign change across the bracket."""
        return self.poly(self.lo) * self.poly(self.hi) < 0

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def dominant_root(kind: str, n: int, tol: Union[Fraction, float] = DEFAULT_TOL) -> RootBracket:
    """Bisect from a bracket with a known sign change down to width ``tol``."""
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")
    p = growth_polynomial(kind, n)
    lo, hi = (Fraction(v) for v in _START[kind])
    if not (p(lo) < 0 < p(hi)):
        raise ArithmeticError(f"starting bracket [{lo}, {hi}] has no sign change for {p}")
    # sanity only: negative at 1 and still positive one unit beyond the bracket
    assert p(1) < 0 < p(hi + 1)
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            return RootBracket(p, mid, mid, steps)
        if v < 0:
            lo = mid
        else:
            hi = mid
        steps += 1
    return RootBracket(p, lo, hi, steps)


def log_int(v: int) -> float:
    """Natural log of a positive integer of any size, from its top 64 bits."""
    if v <= 0:
        raise DomainError(f"log of non-positive value {v}")
    shift = max(v.bit_length() - 64, 0)
    return math.log(v >> shift) + shift * math.log(2)


def growth_rate(seq: Callable[[int], int], m: int, digits: Optional[int] = None):
    """``log(seq(m)) / m``.

    The default float path has relative error well under 1e-9.  With
    ``digits`` the value is an ``mpmath.mpf`` carrying that many significant
    digits, for comparisons finer than double precision.
    """
    v = seq(m)
    if v <= 0:
        raise DomainError(f"growth rate needs a positive value, got {v} at m={m}")
    if digits is None:
        return log_int(v) / m
    with mpmath.workdps(digits):
        return +(mpmath.log(mpmath.mpf(v)) / m)


def log_root(bracket: RootBracket, digits: Optional[int] = None):
    """Log of the bracket midpoint, as a float or at ``digits`` precision."""
    mid = (bracket.lo + bracket.hi) / 2
    if digits is None:
        return math.log(mid)
    with mpmath.workdps(digits):
        return +mpmath.log(mpmath.mpf(mid.numerator) / mid.denominator)


def growth_table(seq: Callable[[int], int], ms: Sequence[int],
                 digits: Optional[int] = None) -> list:
    return [growth_rate(seq, m, digits) for m in ms]
