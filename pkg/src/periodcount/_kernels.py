"""Integer-array kernels for word expansion and per-cell edge tallies.

Each kernel has a numba ``@njit`` version and a vectorized numpy version.
The numba path is used when numba imports and ``PERIODCOUNT_NUMBA`` is not
set to ``0``/``false``/``no``/``off``.  Both paths must give identical arrays.
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("PERIODCOUNT_NUMBA", "1").strip().lower()

try:
    if _FLAG in ("0", "false", "no", "off"):
        raise ImportError("disabled by PERIODCOUNT_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

__all__ = ["HAS_NUMBA", "expand", "edge_tally", "expanded_length", "backend"]


# -- numpy path ---------------------------------------------------------------

def _expand_np(word, cells, offsets, lengths, data):
    lens = lengths[word[:-1], word[1:]]
    offs = offsets[word[:-1], word[1:]]
    tails = lens - 1
    total = int(tails.sum())
    starts = np.repeat(offs + 1, tails)
    block_start = np.repeat(np.cumsum(tails) - tails, tails)
    idx = starts + (np.arange(total, dtype=np.int64) - block_start)
    out = np.empty(total + 1, dtype=np.int64)
    out[0] = data[offs[0]]
    out[1:] = data[idx]
    return out, np.repeat(cells, tails)


def _tally_np(word, cells, ncells, nlabels):
    counts = np.zeros(ncells * nlabels * nlabels, dtype=np.int64)
    flat = (cells * nlabels + word[:-1]) * nlabels + word[1:]
    np.add.at(counts, flat, 1)
    return counts.reshape(ncells, nlabels, nlabels)


# -- numba path ---------------------------------------------------------------

if HAS_NUMBA:
    @njit(cache=True)
    def _expand_nb(word, cells, offsets, lengths, data):
        nedges = word.size - 1
        total = 1
        for e in range(nedges):
            total += lengths[word[e], word[e + 1]] - 1
        out = np.empty(total, dtype=np.int64)
        out_cells = np.empty(total - 1, dtype=np.int64)
        out[0] = data[offsets[word[0], word[1]]]
        pos = 1
        for e in range(nedges):
            o = offsets[word[e], word[e + 1]]
            length = lengths[word[e], word[e + 1]]
            c = cells[e]
            for t in range(1, length):
                out[pos] = data[o + t]
                out_cells[pos - 1] = c
                pos += 1
        return out, out_cells

    @njit(cache=True)
    def _tally_nb(word, cells, ncells, nlabels):
        counts = np.zeros((ncells, nlabels, nlabels), dtype=np.int64)
        for e in range(word.size - 1):
            counts[cells[e], word[e], word[e + 1]] += 1
        return counts


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


def expanded_length(word, lengths) -> int:
    """Length of the expansion of ``word`` before duplicate deletion."""
    return 1 + int((lengths[word[:-1], word[1:]] - 1).sum())


def expand(word, cells, offsets, lengths, data, use_numba=None):
    """Replace every edge of ``word`` by its rule, overlapping shared endpoints.

    ``cells[e]`` is the coarse cell of edge ``e`` and is inherited by every
    edge of its expansion.  Callers check rule coverage first.
    """
    if use_numba is None or not HAS_NUMBA:
        use_numba = HAS_NUMBA
    if use_numba:
        return _expand_nb(word, cells, offsets, lengths, data)
    return _expand_np(word, cells, offsets, lengths, data)


def edge_tally(word, cells, ncells, nlabels, use_numba=None):
    """``counts[c, u, v]``: number of edges ``u -> v`` lying in cell ``c``."""
    if use_numba is None or not HAS_NUMBA:
        use_numba = HAS_NUMBA
    if use_numba:
        return _tally_nb(word, cells, ncells, nlabels)
    return _tally_np(word, cells, ncells, nlabels)
