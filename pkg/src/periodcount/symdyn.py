"""Symbolic representations of piecewise-linear maps and their iteration.

A map whose node values are themselves nodes is encoded by the word of its
node values.  Each directed edge ``(u, v)`` of a word rewrites to the base
word restricted to the x-range between ``u`` and ``v`` (reversed when
``u > v``); rewriting every edge of the word for ``g^k`` gives the word for
``g^(k+1)``.

For the map ``f_n`` the edge populations per coarse cell obey a small linear
recursion (:func:`edge_counts`), which counts fixed points of ``f_n^k``
without ever building the exponentially long words.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, ClosureViolation, DomainError, MissingRule
from .pwl_oracle import PLMap, Rational, make_fn

__all__ = [
    "NodeAlphabet",
    "RepWord",
    "EdgeRules",
    "EdgeCounts",
    "AuditRecord",
    "DEFAULT_WORD_BUDGET",
    "base_representation",
    "derive_rules",
    "iterate_word",
    "fn_representation",
    "fn_word",
    "edge_counts",
    "fixed_count_symbolic",
    "word_edge_audit",
    "crossings",
]

DEFAULT_WORD_BUDGET = 5_000_000


@dataclass(frozen=True)
class NodeAlphabet:
    """Labels ``1..len(coords)`` for the node x-coordinates, in increasing order.

    ``images[i]`` is the label of the value at node ``i + 1`` before duplicate
    deletion; rule derivation needs it because deletion forgets positions.
    """

    coords: tuple[Rational, ...]
    images: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coords)

    def label(self, x) -> int:
        return self.coords.index(x) + 1


class RepWord:
    """A word of node labels with no two consecutive labels equal.

    ``cells[e]`` (optional) records the coarse x-cell that edge ``e`` lies in.
    """

    __slots__ = ("labels", "cells")

    def __init__(self, labels: Iterable[int], cells: Optional[Iterable[int]] = None):
        arr = np.asarray(list(labels) if not isinstance(labels, np.ndarray) else labels, dtype=np.int64)
        if arr.size < 2:
            raise DomainError("a representation word has at least two labels")
        if np.any(arr[1:] == arr[:-1]):
            raise DomainError("consecutive labels of a representation word must differ")
        arr.setflags(write=False)
        self.labels = arr
        if cells is not None:
            cells = np.asarray(cells, dtype=np.int64)
            if cells.size != arr.size - 1:
                raise DomainError("need one cell per edge")
            cells.setflags(write=False)
        self.cells = cells

    def __len__(self) -> int:
        return int(self.labels.size)

    def __iter__(self):
        return (int(v) for v in self.labels)

    def __eq__(self, other) -> bool:
        if isinstance(other, RepWord):
            return np.array_equal(self.labels, other.labels)
        return list(self) == list(other)

    def edges(self) -> Iterable[tuple[int, int]]:
        lab = self.labels
        return ((int(lab[i]), int(lab[i + 1])) for i in range(lab.size - 1))

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"RepWord({self})"


@dataclass(frozen=True)
class EdgeRules:
    """Expansion word for every reachable directed edge.

    The dense arrays (``offsets``, ``lengths`` indexed by ``[u, v]`` and the
    flat ``data``) feed the expansion kernel.
    """

    rules: dict[tuple[int, int], tuple[int, ...]]
    size: int
    offsets: np.ndarray = field(repr=False, compare=False)
    lengths: np.ndarray = field(repr=False, compare=False)
    data: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_dict(cls, rules: dict[tuple[int, int], tuple[int, ...]], size: int) -> "EdgeRules":
        offsets = np.zeros((size + 1, size + 1), dtype=np.int64)
        lengths = np.zeros((size + 1, size + 1), dtype=np.int64)
        flat: list[int] = []
        for (u, v), body in sorted(rules.items()):
            offsets[u, v] = len(flat)
            lengths[u, v] = len(body)
            flat.extend(body)
        return cls(dict(rules), size, offsets, lengths, np.asarray(flat, dtype=np.int64))

    def __getitem__(self, edge: tuple[int, int]) -> tuple[int, ...]:
        try:
            return self.rules[edge]
        except KeyError:
            raise MissingRule(edge) from None

    def __contains__(self, edge) -> bool:
        return edge in self.rules


def _dedupe(labels: Sequence[int]) -> list[int]:
    out = [labels[0]]
    for v in labels[1:]:
        if v != out[-1]:
            out.append(v)
    return out


def base_representation(f: PLMap) -> tuple[NodeAlphabet, RepWord]:
    """Alphabet of node x-coordinates and the word of node values.

    Every node value must itself be a node x-coordinate.
    """
    coords = f.xs
    index = {x: i + 1 for i, x in enumerate(coords)}
    missing = [y for y in f.ys if y not in index]
    if missing:
        raise ClosureViolation(sorted(set(missing)))
    images = tuple(index[y] for y in f.ys)
    alphabet = NodeAlphabet(tuple(coords), images)
    word = _dedupe(images)
    if len(word) < 2:
        raise DomainError("a constant map has no representation word")
    cells = _word_cells(images)
    return alphabet, RepWord(word, cells)


def _word_cells(images: Sequence[int]) -> list[int]:
    # edge between nodes i and i+1 sits in cell i; constant pieces vanish
    return [i + 1 for i in range(len(images) - 1) if images[i] != images[i + 1]]


def _restrict(alphabet: NodeAlphabet, u: int, v: int) -> tuple[int, ...]:
    lo, hi = min(u, v), max(u, v)
    body = _dedupe(alphabet.images[lo - 1:hi])
    if u > v:
        body.reverse()
    return tuple(body)


def derive_rules(alphabet: NodeAlphabet, word: RepWord) -> EdgeRules:
    """Rules for every edge reachable from ``word`` by repeated rewriting."""
    rules: dict[tuple[int, int], tuple[int, ...]] = {}
    pending = list(dict.fromkeys(word.edges()))
    while pending:
        edge = pending.pop()
        if edge in rules:
            continue
        body = _restrict(alphabet, *edge)
        rules[edge] = body
        for e in zip(body, body[1:]):
            if e not in rules:
                pending.append(e)
    return EdgeRules.from_dict(rules, len(alphabet))


def iterate_word(word: RepWord, rules: EdgeRules, budget: int = DEFAULT_WORD_BUDGET,
                 use_numba: Optional[bool] = None) -> RepWord:
    """Rewrite every edge, glue on shared endpoints, then delete repeats."""
    lab = word.labels
    present = rules.lengths[lab[:-1], lab[1:]] == 0
    if present.any():
        e = int(np.argmax(present))
        raise MissingRule((int(lab[e]), int(lab[e + 1])))
    size = _kernels.expanded_length(lab, rules.lengths)
    if size > budget:
        raise BudgetExceeded(f"next word would have {size} labels (budget {budget})")
    cells = word.cells if word.cells is not None else np.zeros(lab.size - 1, dtype=np.int64)
    out, out_cells = _kernels.expand(lab, cells, rules.offsets, rules.lengths, rules.data, use_numba)
    keep = out[1:] != out[:-1]
    if not keep.all():
        out = out[np.concatenate(([True], keep))]
        out_cells = out_cells[keep]
    return RepWord(out, out_cells if word.cells is not None else None)


# -- the map f_n ------------------------------------------------------------

def fn_representation(n: int) -> tuple[NodeAlphabet, RepWord, EdgeRules]:
    alphabet, word = base_representation(make_fn(n))
    return alphabet, word, derive_rules(alphabet, word)


def fn_word(n: int, k: int, budget: int = DEFAULT_WORD_BUDGET,
            use_numba: Optional[bool] = None) -> RepWord:
    """Word for ``f_n^k``, with coarse cells attached."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _, word, rules = fn_representation(n)
    for _ in range(k - 1):
        word = iterate_word(word, rules, budget, use_numba)
    return word


def crossings(word: RepWord, alphabet: NodeAlphabet) -> np.ndarray:
    """Diagonal crossings per coarse cell.

    An edge in cell ``[x_i, x_(i+1)]`` crosses ``y = x`` when its label span
    covers that cell.  Index ``i`` of the result is cell ``i`` (index 0 unused).
    """
    lab = word.labels
    lo = np.minimum(lab[:-1], lab[1:])
    hi = np.maximum(lab[:-1], lab[1:])
    hit = (lo <= word.cells) & (hi >= word.cells + 1)
    return np.bincount(word.cells[hit], minlength=len(alphabet))


@dataclass(frozen=True)
class EdgeCounts:
    """``a[k, i, j]`` for ``1 <= k <= K`` and ``1 <= i, j <= n - 1``.

    Type ``j = 1`` counts edges ``1n``/``n1``; type ``j >= 2`` counts
    ``j(j+1)``/``(j+1)j``.  Lookups with ``k <= 0`` return 0.
    """

    n: int
    K: int
    data: np.ndarray = field(repr=False)

    def __getitem__(self, key) -> int:
        k, i, j = key
        if k <= 0:
            return 0
        if k > self.K:
            raise DomainError(f"edge counts computed to k={self.K}, asked for {k}")
        return self.data[k, i, j]

    def row(self, k: int) -> np.ndarray:
        """``(n-1) x (n-1)`` object array of row ``k`` (cell, type), 0-based."""
        if k <= 0:
            return np.zeros((self.n - 1, self.n - 1), dtype=object)
        return self.data[k, 1:, 1:]


def _edge_count_step(prev: np.ndarray) -> np.ndarray:
    # prev[i, j] 1-based in both axes, shape (n, n)
    n = prev.shape[0]
    new = np.zeros_like(prev)
    new[1:, 1] = prev[1:, 1] + prev[1:, n - 1]
    new[1:, 2] = prev[1:, 1]
    for j in range(3, n):
        new[1:, j] = prev[1:, 1] + prev[1:, j - 1]
    return new


def edge_counts(n: int, kmax: int) -> EdgeCounts:
    if n < 3:
        raise DomainError(f"edge counts need n >= 3, got {n}")
    kmax = max(kmax, 1)
    a = np.empty((kmax + 1, n, n), dtype=object)
    a.fill(0)
    for i in range(1, n - 1):
        a[1, i, i + 1] = 1
    a[1, n - 1, 1] = 1
    for k in range(1, kmax):
        a[k + 1] = _edge_count_step(a[k])
    return EdgeCounts(n, kmax, a)


def fixed_count_symbolic(n: int, k: int, counts: Optional[EdgeCounts] = None) -> int:
    """Number of solutions of ``f_n^k(x) = x`` from the edge-count table."""
    if counts is None or counts.K < k:
        counts = edge_counts(n, k)
    return int(sum(counts[k, i, 1] for i in range(1, n))
               + sum(counts[k, i, i] for i in range(2, n)))


@dataclass(frozen=True)
class AuditRecord:
    n: int
    k: int
    word_length: int
    from_word: np.ndarray = field(repr=False)
    from_table: np.ndarray = field(repr=False)
    stray_edges: dict = field(default_factory=dict)
    crossing_count: int = 0

    @property
    def matches(self) -> bool:
        return not self.stray_edges and np.array_equal(self.from_word.astype(object), self.from_table)


def word_edge_audit(n: int, k: int, budget: int = DEFAULT_WORD_BUDGET,
                    use_numba: Optional[bool] = None) -> AuditRecord:
    """Tally edge types per cell in the literal word and compare with :func:`edge_counts`."""
    alphabet, word, rules = fn_representation(n)
    for _ in range(k - 1):
        word = iterate_word(word, rules, budget, use_numba)
    tally = _kernels.edge_tally(word.labels, word.cells, n, n + 1, use_numba)
    from_word = np.zeros((n - 1, n - 1), dtype=np.int64)
    stray = {}
    for c in range(1, n):
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                count = int(tally[c, u, v])
                if not count:
                    continue
                lo, hi = min(u, v), max(u, v)
                if (lo, hi) == (1, n):
                    from_word[c - 1, 0] += count
                elif hi == lo + 1 and lo >= 2:
                    from_word[c - 1, lo - 1] += count
                else:
                    stray[(c, u, v)] = count
    table = edge_counts(n, k)
    return AuditRecord(n, k, len(word), from_word, table.row(k).copy(), stray,
                       int(crossings(word, alphabet).sum()))
