"""Recurrence families of solution counts and the arrays derived from them.

Three families of fixed-point counts are generated here, all in exact
integers:

* ``thm3``: generalized Fibonacci numbers seeded with ``2^m - 1``,
* ``thm4``: a combination of the two-step ``b`` table,
* ``thm5phi`` / ``thm5psi``: combinations of the signed-index ``c`` table.

On top of them sit the normalized orbit counts ``A_{m,n}`` and ``D_{m,n}``,
their second-difference arrays ``B`` and ``E``, and a checker for the
empirical patterns those arrays appear to follow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, HorizonTooSmall
from .numtheory import IntegerSequence, census, power_sequence

__all__ = [
    "FAMILY_KINDS",
    "RecurrenceFamily",
    "BTable",
    "CTable",
    "ClaimRow",
    "ConjectureReport",
    "thm3_phi",
    "thm4_b",
    "thm4_phi",
    "thm5_c",
    "thm5_phi",
    "thm5_psi",
    "remark1_A",
    "remark1_B",
    "remark2_D",
    "remark2_E",
    "conjecture_report",
    "N1_EXTENSION_NOTE",
]

FAMILY_KINDS = ("thm3", "thm4", "thm5phi", "thm5psi", "power")

N1_EXTENSION_NOTE = (
    "column n=1 uses the b-table recursion extended to n=1 "
    "(first recursion vacuous); this is an interpretation"
)


def _zero_object_array(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


# -- generalized Fibonacci family ---------------------------------------------

def thm3_phi(n: int, mmax: int) -> IntegerSequence:
    """``phi(m) = 2^m - 1`` for ``m < n``, then the sum of the previous ``n - 1`` terms."""
    if n < 3:
        raise DomainError(f"thm3 family needs n >= 3, got {n}")
    values: list[int] = []
    for m in range(1, mmax + 1):
        if m <= n - 1:
            values.append(2 ** m - 1)
        else:
            values.append(sum(values[m - 1 - j] for j in range(1, n)))
    return IntegerSequence.from_values(values, f"thm3 n={n}")


# -- b-table family -----------------------------------------------------------

@dataclass(frozen=True)
class BTable:
    """``b[k, i, j]`` for ``1 <= k <= K``, ``i in {1, 2}``, ``1 <= j <= n``.

    Lookups with ``k <= 0`` return 0.
    """

    n: int
    K: int
    data: np.ndarray = field(repr=False)

    def __getitem__(self, key) -> int:
        k, i, j = key
        if k <= 0:
            return 0
        if k > self.K:
            raise HorizonTooSmall(k, self.n, self.K)
        if i not in (1, 2) or not 1 <= j <= self.n:
            raise IndexError(f"b index out of range: {key}")
        return self.data[k, i, j]

    def recomputed(self, k: int, i: int, j: int) -> int:
        """Value of cell ``(k, i, j)`` rebuilt from its predecessors (``k >= 3``)."""
        if j < self.n:
            return self[k - 2, i, 1] + self[k - 2, i, j + 1]
        return self[k - 2, i, 1] + self[k - 1, i, self.n]


def thm4_b(n: int, kmax: int, *, extend_n1: bool = False) -> BTable:
    if n <= 0 or (n == 1 and not extend_n1):
        raise DomainError(f"b table needs n >= 2 (n = 1 only with extend_n1), got {n}")
    kmax = max(kmax, 2)
    b = _zero_object_array((kmax + 1, 3, n + 1))
    b[2, 1, 1:] = 1
    b[1, 2, n] = b[2, 2, n] = 1
    for k in range(1, kmax - 1):
        for i in (1, 2):
            b[k + 2, i, 1:n] = b[k, i, 1] + b[k, i, 2:n + 1]
            b[k + 2, i, n] = b[k, i, 1] + b[k + 1, i, n]
    return BTable(n, kmax, b)


def thm4_phi(n: int, mmax: int, *, extend_n1: bool = False) -> IntegerSequence:
    table = thm4_b(n, mmax, extend_n1=extend_n1)

    def value(m: int) -> int:
        return table[m, 2, n] + 2 * sum(table[m + 2 - 2 * j, 1, j] for j in range(1, n + 1))

    label = f"thm4 n={n}" + (" (extended)" if n == 1 else "")
    return IntegerSequence.from_values([value(m) for m in range(1, mmax + 1)], label)


# -- signed c-table families --------------------------------------------------

@dataclass(frozen=True)
class CTable:
    """``c[k, i, j]`` for ``1 <= k <= K``, ``i in {1, 2}``, ``1 <= |j| <= n``.

    Column ``j + n`` of ``data`` holds index ``j``; lookups with ``k <= 0`` return 0.
    """

    n: int
    K: int
    data: np.ndarray = field(repr=False)

    def __getitem__(self, key) -> int:
        k, i, j = key
        if k <= 0:
            return 0
        if k > self.K:
            raise HorizonTooSmall(k, self.n, self.K)
        if i not in (1, 2) or j == 0 or abs(j) > self.n:
            raise IndexError(f"c index out of range: {key}")
        return self.data[k, i, j + self.n]

    def recomputed(self, k: int, i: int, j: int) -> int:
        """Value of cell ``(k, i, j)`` rebuilt from row ``k - 1`` (``k >= 2``)."""
        n, p = self.n, k - 1
        if j == 1:
            return self[p, i, 1] + self[p, i, -n] + self[p, i, n]
        if j > 1:
            return self[p, i, j - 1] + self[p, i, n]
        if j == -1:
            return self[p, i, -1] + self[p, i, -n] + self[p, i, n]
        return self[p, i, j + 1] + self[p, i, -n]


def thm5_c(n: int, kmax: int) -> CTable:
    if n < 2:
        raise DomainError(f"c table needs n >= 2, got {n}")
    kmax = max(kmax, 1)
    c = _zero_object_array((kmax + 1, 3, 2 * n + 1))
    c[1, 1, 2 * n] = 1                       # j = n
    c[1, 2, n + 1] = 1                       # j = 1
    for k in range(1, kmax):
        for i in (1, 2):
            row = c[k, i]
            top, bottom = row[2 * n], row[0]   # j = n, j = -n
            new = c[k + 1, i]
            new[n + 1] = row[n + 1] + bottom + top
            new[n + 2:2 * n + 1] = row[n + 1:2 * n] + top
            new[n - 1] = row[n - 1] + bottom + top
            # j = -2..-n read j + 1 = -1..-(n-1)
            new[0:n - 1] = row[1:n] + bottom
    return CTable(n, kmax, c)


def thm5_phi(n: int, mmax: int) -> IntegerSequence:
    table = thm5_c(n, mmax + 1)
    values = [
        2 * sum(table[m + 2 - k, 1, n + 1 - k] for k in range(1, n)) + 2 * table[m + 1, 2, 1] - 1
        for m in range(1, mmax + 1)
    ]
    return IntegerSequence.from_values(values, f"thm5phi n={n}")


def thm5_psi(n: int, mmax: int) -> IntegerSequence:
    table = thm5_c(n, mmax + 1)
    values = [
        2 * sum(table[m + 2 - k, 1, k - n - 1] for k in range(1, n)) + 2 * table[m + 1, 2, -1] + 1
        for m in range(1, mmax + 1)
    ]
    return IntegerSequence.from_values(values, f"thm5psi n={n}")


# -- family dispatch ----------------------------------------------------------

_MIN_N = {"thm3": 3, "thm4": 2, "thm5phi": 2, "thm5psi": 2, "power": 2}


@dataclass(frozen=True)
class RecurrenceFamily:
    kind: str
    n: int
    extend_n1: bool = False

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise DomainError(f"unknown family {self.kind!r}")
        low = _MIN_N[self.kind]
        if self.kind == "thm4" and self.n == 1 and self.extend_n1:
            return
        if self.n < low:
            raise DomainError(f"{self.kind} needs n >= {low}, got {self.n}")

    @property
    def census_kind(self) -> str:
        return "symmetric" if self.kind == "thm5psi" else "fixed"

    @property
    def root_kind(self) -> Optional[str]:
        return {"thm3": "alpha", "thm4": "beta", "thm5phi": "gamma", "thm5psi": "gamma"}.get(self.kind)

    def sequence(self, mmax: int) -> IntegerSequence:
        if self.kind == "thm3":
            return thm3_phi(self.n, mmax)
        if self.kind == "thm4":
            return thm4_phi(self.n, mmax, extend_n1=self.extend_n1)
        if self.kind == "thm5phi":
            return thm5_phi(self.n, mmax)
        if self.kind == "thm5psi":
            return thm5_psi(self.n, mmax)
        return power_sequence(self.n)

    def __str__(self) -> str:
        return f"{self.kind} n={self.n}"


# -- normalized orbit counts and their difference arrays ----------------------

def remark1_A(n: int, mmax: int) -> IntegerSequence:
    """``A_{m,n}``: orbits of odd minimal period ``2m - 1`` for the b-table family.

    ``n = 1`` uses the extended b-table recursion (see ``N1_EXTENSION_NOTE``).
    """
    phi = thm4_phi(n, max(2 * mmax - 1, 1), extend_n1=(n == 1))
    values = [census(phi, 2 * m - 1, "fixed")[1] for m in range(1, mmax + 1)]
    return IntegerSequence.from_values(values, f"A n={n}")


def remark2_D(n: int, mmax: int) -> IntegerSequence:
    """``D_{m,n}``: symmetric orbits of minimal period ``2m`` for ``psi_n``."""
    psi = thm5_psi(n, max(mmax, 1))
    values = [census(psi, m, "symmetric")[1] for m in range(1, mmax + 1)]
    return IntegerSequence.from_values(values, f"D n={n}")


class _DiffArray:
    """Lazily evaluated ``X_{m,n,k}`` over a per-``n`` base array ``Y_{m,n}``.

    ``X_{m,n,1} = Y_{m+s1,n} - 2 Y_{m+s1-1,n}`` with ``s1 = 3n + first_offset`` and
    ``X_{m,n,k} = X_{m+2n+step_offset,n,k-1} - X_{m+2n+step_offset,n+1,k-1}``.
    """

    def __init__(self, base: Callable[[int, int], IntegerSequence], first_offset: int,
                 step_offset: int, horizon: int):
        self._base = base
        self._first_offset = first_offset
        self._step_offset = step_offset
        self.horizon = horizon
        self._rows: dict[int, IntegerSequence] = {}
        self._memo: dict[tuple[int, int, int], int] = {}

    def base(self, m: int, n: int) -> int:
        if m > self.horizon:
            raise HorizonTooSmall(m, n, self.horizon)
        if n not in self._rows:
            self._rows[n] = self._base(n, self.horizon)
        return self._rows[n](m)

    def __call__(self, m: int, n: int, k: int) -> int:
        key = (m, n, k)
        if key in self._memo:
            return self._memo[key]
        if k == 1:
            s = m + 3 * n + self._first_offset
            value = self.base(s, n) - 2 * self.base(s - 1, n)
        else:
            s = m + 2 * n + self._step_offset
            value = self(s, n, k - 1) - self(s, n + 1, k - 1)
        self._memo[key] = value
        return value


def _needed_horizon(mmax: int, nmax: int, kmax: int, first_offset: int, step_offset: int) -> int:
    top_n = nmax + kmax - 1
    return mmax + (kmax - 1) * (2 * top_n + step_offset) + 3 * top_n + first_offset


def _diff_table(arr: _DiffArray, mrange, nrange, krange) -> dict[tuple[int, int, int], int]:
    return {(m, n, k): arr(m, n, k) for m in mrange for n in nrange for k in krange}


def _b_array(horizon: int) -> _DiffArray:
    return _DiffArray(remark1_A, first_offset=2, step_offset=1, horizon=horizon)


def _e_array(horizon: int) -> _DiffArray:
    return _DiffArray(remark2_D, first_offset=0, step_offset=0, horizon=horizon)


def remark1_B(mmax: int, nmax: int, kmax: int, horizon: Optional[int] = None
              ) -> dict[tuple[int, int, int], int]:
    """``B_{m,n,k}`` for ``1 <= m <= mmax``, ``1 <= n <= nmax``, ``1 <= k <= kmax``.

    ``horizon`` caps the ``A`` index; the default is large enough for the
    request.  A too-small horizon raises :class:`HorizonTooSmall`.
    """
    if horizon is None:
        horizon = _needed_horizon(mmax, nmax, kmax, 2, 1)
    return _diff_table(_b_array(horizon), range(1, mmax + 1), range(1, nmax + 1), range(1, kmax + 1))


def remark2_E(mmax: int, nmax: int, kmax: int, horizon: Optional[int] = None
              ) -> dict[tuple[int, int, int], int]:
    """``E_{m,n,k}`` for ``1 <= m <= mmax``, ``2 <= n <= nmax``, ``1 <= k <= kmax``."""
    if horizon is None:
        horizon = _needed_horizon(mmax, nmax, kmax, 0, 0)
    return _diff_table(_e_array(horizon), range(1, mmax + 1), range(2, nmax + 1), range(1, kmax + 1))


# -- conjecture checking ------------------------------------------------------

@dataclass(frozen=True)
class ClaimRow:
    claim: str
    clause: str
    checked: str
    holds: bool
    counterexample: Optional[str] = None


@dataclass(frozen=True)
class ConjectureReport:
    family: str
    rows: tuple[ClaimRow, ...]
    notes: tuple[str, ...] = ()

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)


def _check(claim: str, clause: str, checked: str,
           cases: Iterable[tuple[str, bool]]) -> Optional[ClaimRow]:
    seen = False
    for label, ok in cases:
        seen = True
        if not ok:
            return ClaimRow(claim, clause, checked, False, label)
    if not seen:
        return None
    return ClaimRow(claim, clause, checked, True)


def _span(r: Sequence[int]) -> str:
    r = list(r)
    return f"{r[0]}..{r[-1]}" if r else "-"


def conjecture_report(which: str, nrange: Sequence[int], mrange: Sequence[int],
                      krange: Sequence[int], horizon: Optional[int] = None) -> ConjectureReport:
    """Check the observed patterns of ``A``/``B`` (``remark1``) or ``D``/``E`` (``remark2``).

    Every clause produces one row; clauses whose checked set is empty are
    omitted, so empty ranges give an empty report.
    """
    if which == "remark1":
        return _remark_report(which, "A", "B", list(nrange), list(mrange), list(krange), horizon,
                              lo_n=1, base_offset=1, eq_hi=2, iv_width=1, const_ms=(3,),
                              array=_b_array, diff_offsets=(2, 1))
    if which == "remark2":
        return _remark_report(which, "D", "E", list(nrange), list(mrange), list(krange), horizon,
                              lo_n=2, base_offset=0, eq_hi=0, iv_width=0, const_ms=(3, 4),
                              array=_e_array, diff_offsets=(0, 0))
    raise DomainError(f"unknown report {which!r}")


def _remark_report(which, Y, X, nrange, mrange, krange, horizon, *, lo_n, base_offset, eq_hi,
                   iv_width, const_ms, array, diff_offsets) -> ConjectureReport:
    nrange = [n for n in nrange if n >= lo_n]
    notes = (N1_EXTENSION_NOTE,) if which == "remark1" and 1 in nrange else ()
    rows: list[ClaimRow] = []
    if not nrange:
        return ConjectureReport(which, (), notes)

    # the pattern exponent is m - n - 1 (A) or m - n (D)
    def expo(m, n):
        return m - n - base_offset

    if mrange:
        ytop = max(mrange)
        ybase = remark1_A if Y == "A" else remark2_D
        yvals = {n: ybase(n, ytop) for n in nrange}
        eq_cases = [(m, n) for n in nrange for m in mrange if n + base_offset <= m <= 3 * n + eq_hi]
        gt_cases = [(m, n) for n in nrange for m in mrange if m > 3 * n + eq_hi]
        lo_txt = "n+1" if base_offset else "n"
        hi_txt = f"3n+{eq_hi}" if eq_hi else "3n"
        e_txt = "m-n-1" if base_offset else "m-n"
        row = _check(f"{Y}-eq", f"{Y}_{{m,n}} = 2^({e_txt}) for {lo_txt} <= m <= {hi_txt}",
                     f"n={_span(nrange)}, m={_span(mrange)}",
                     ((f"{Y}_{{{m},{n}}}={yvals[n](m)}", yvals[n](m) == 2 ** expo(m, n))
                      for m, n in eq_cases))
        if row:
            rows.append(row)
        row = _check(f"{Y}-gt", f"{Y}_{{m,n}} > 2^({e_txt}) for m > {hi_txt}",
                     f"n={_span(nrange)}, m={_span(mrange)}",
                     ((f"{Y}_{{{m},{n}}}={yvals[n](m)}", yvals[n](m) > 2 ** expo(m, n))
                      for m, n in gt_cases))
        if row:
            rows.append(row)

    if krange:
        nmax, kmax = max(nrange), max(krange)
        mneed = max(2 * nmax + iv_width, max(const_ms), 2)
        if horizon is None:
            horizon = _needed_horizon(mneed, nmax, kmax, *diff_offsets)
        arr = array(horizon)
        lo = "1" if lo_n == 1 else "2"
        checked = f"n={_span(nrange)}, k={_span(krange)}"
        rows.append(_check(f"{X}-i", f"{X}_{{1,n,k}} = 2 for all n >= {lo}", checked,
                           ((f"{X}_{{1,{n},{k}}}={arr(1, n, k)}", arr(1, n, k) == 2)
                            for n in nrange for k in krange)))
        rows.append(_check(f"{X}-ii", f"{X}_{{2,n,k}} = 4k for all n >= {lo}", checked,
                           ((f"{X}_{{2,{n},{k}}}={arr(2, n, k)}", arr(2, n, k) == 4 * k)
                            for n in nrange for k in krange)))
        const_txt = " and ".join(f"{X}_{{{m},n,k}}" for m in const_ms)
        rows.append(_check(f"{X}-iii", f"{const_txt} depend only on k", checked,
                           ((f"{X}_{{{m},{n},{k}}}={arr(m, n, k)} vs n={nrange[0]}: {arr(m, nrange[0], k)}",
                             arr(m, n, k) == arr(m, nrange[0], k))
                            for m in const_ms for k in krange for n in nrange)))
        width = f"2n+{iv_width}" if iv_width else "2n"
        row = _check(f"{X}-iv", f"{X}_{{m,n,k}} = {X}_{{m,j,k}} for 1 <= m <= {width}, j >= n", checked,
                     ((f"{X}_{{{m},{n},{k}}}={arr(m, n, k)} vs j={j}: {arr(m, j, k)}",
                       arr(m, n, k) == arr(m, j, k))
                      for n in nrange for j in nrange if j > n
                      for m in range(1, 2 * n + iv_width + 1) for k in krange))
        if row:
            rows.append(row)
    return ConjectureReport(which, tuple(r for r in rows if r is not None), notes)
