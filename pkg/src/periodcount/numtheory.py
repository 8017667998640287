"""Prime factorization and the inclusion-exclusion operators Phi_1, Phi_2.

``phi1(m, seq)`` turns the number of solutions of ``f^m(x) = x`` into the
number of points of minimal period ``m``; ``phi2`` does the same for the
symmetric count built from ``f^m(x) = -x``.  ``census`` applies the orbit
divisibility that both counts must satisfy.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Callable, Iterable, Optional, Sequence

from .errors import DivisibilityViolation, DomainError

__all__ = [
    "Factorization",
    "IntegerSequence",
    "factorize",
    "phi1",
    "phi1_divisor_sum",
    "phi2",
    "census",
    "corollary2_check",
    "power_sequence",
]


@dataclass(frozen=True)
class Factorization:
    m: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors if p != 2)

    def is_power_of_two(self) -> bool:
        return all(p == 2 for p, _ in self.factors)

    def radical(self) -> int:
        return prod(self.primes)


def factorize(m: int) -> Factorization:
    """Trial division; ``m`` is expected to stay small (a few thousand at most)."""
    if m < 1:
        raise DomainError(f"factorize needs m >= 1, got {m}")
    factors = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(m, tuple(factors))


class IntegerSequence:
    """A memoized map ``m -> int`` on ``1 <= m <= horizon``.

    The memo is guarded by a lock so one instance can be shared by threads.
    """

    def __init__(self, evaluator: Callable[[int], int], label: str = "",
                 horizon: Optional[int] = None):
        self._evaluator = evaluator
        self.label = label
        self.horizon = horizon
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_values(cls, values: Sequence[int], label: str = "") -> "IntegerSequence":
        """Sequence whose value at ``m`` is ``values[m - 1]``."""
        values = tuple(int(v) for v in values)
        return cls(lambda m: values[m - 1], label, horizon=len(values))

    def __call__(self, m: int) -> int:
        if m < 1 or (self.horizon is not None and m > self.horizon):
            raise DomainError(f"{self.label or 'sequence'} is defined on 1..{self.horizon}, got {m}")
        with self._lock:
            if m in self._memo:
                return self._memo[m]
        value = int(self._evaluator(m))
        with self._lock:
            self._memo.setdefault(m, value)
        return value

    def values(self, mmax: int) -> list[int]:
        return [self(m) for m in range(1, mmax + 1)]

    def perturbed(self, at: int, delta: int = 1) -> "IntegerSequence":
        """Copy with the value at ``at`` shifted by ``delta`` (negative controls)."""
        label = f"{self.label}[{at}]{delta:+d}"
        return IntegerSequence(lambda m: self(m) + (delta if m == at else 0), label, self.horizon)

    def __repr__(self) -> str:
        return f"IntegerSequence({self.label!r}, horizon={self.horizon})"


def power_sequence(n: int) -> IntegerSequence:
    return IntegerSequence(lambda m: n ** m, f"power n={n}")


def _alternating_sum(m: int, primes: Iterable[int], seq: Callable[[int], int]) -> int:
    primes = tuple(primes)
    total = 0
    for r in range(len(primes) + 1):
        sign = -1 if r % 2 else 1
        for subset in combinations(primes, r):
            total += sign * seq(m // prod(subset))
    return total


def phi1(m: int, seq: Callable[[int], int]) -> int:
    """Points of minimal period ``m`` given total fixed-point counts ``seq``."""
    if m < 1:
        raise DomainError(f"phi1 needs m >= 1, got {m}")
    return _alternating_sum(m, factorize(m).primes, seq)


def phi1_divisor_sum(m: int, seq: Callable[[int], int]) -> int:
    """Phi_1 as a sum over divisors ``d`` of rad(m), weighted by (-1)^omega(d).

    Walks divisors in increasing order instead of subsets, so it serves as an
    independent cross-check of :func:`phi1`.
    """
    if m < 1:
        raise DomainError(f"phi1 needs m >= 1, got {m}")
    rad = factorize(m).radical()
    total = 0
    for d in range(1, rad + 1):
        if rad % d:
            continue
        omega = len(factorize(d).factors)
        total += (-1) ** omega * seq(m // d)
    return total


def phi2(m: int, seq: Callable[[int], int]) -> int:
    """Symmetric count: only odd primes are divided out; ``seq(m) - 1`` at powers of two."""
    if m < 1:
        raise DomainError(f"phi2 needs m >= 1, got {m}")
    f = factorize(m)
    if f.is_power_of_two():
        return seq(m) - 1
    return _alternating_sum(m, f.odd_primes, seq)


def census(seq: Callable[[int], int], m: int, kind: str = "fixed") -> tuple[int, int]:
    """Return ``(count, orbits)`` for minimal period ``m``.

    ``kind="fixed"`` uses Phi_1 and orbits of length ``m``; ``kind="symmetric"``
    uses Phi_2 and symmetric orbits of length ``2m``.  Raises
    :class:`DivisibilityViolation` when the division is not exact.
    """
    if kind == "fixed":
        count, length = phi1(m, seq), m
    elif kind == "symmetric":
        count, length = phi2(m, seq), 2 * m
    else:
        raise DomainError(f"unknown census kind {kind!r}")
    orbits, rem = divmod(count, length)
    if rem:
        raise DivisibilityViolation(m, count, length)
    return count, orbits


def corollary2_check(m: int, n: int, kind: str = "fixed") -> bool:
    if n < 2:
        raise DomainError(f"power family needs n >= 2, got {n}")
    if kind == "symmetric" and n % 2 == 0:
        raise DomainError(f"symmetric power family needs odd n, got {n}")
    seq = lambda k: n ** k  # noqa: E731
    if kind == "fixed":
        return phi1(m, seq) % m == 0
    if kind == "symmetric":
        return phi2(m, seq) % (2 * m) == 0
    raise DomainError(f"unknown census kind {kind!r}")
