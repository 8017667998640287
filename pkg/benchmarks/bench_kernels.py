"""Time the numba and numpy paths of the word-expansion and edge-tally kernels.

    python benchmarks/bench_kernels.py [--n 3] [--k 26] [--repeat 5]

Both paths run on the same input words; the script checks that their outputs
agree before reporting timings.
"""
import argparse
import sys
import timeit

import numpy as np

from periodcount import _kernels
from periodcount.symdyn import fn_representation, fn_word


def bench(n: int, k: int, repeat: int) -> int:
    if not _kernels.HAS_NUMBA:
        print("numba unavailable (or disabled by PERIODCOUNT_NUMBA); nothing to compare", file=sys.stderr)
        return 1
    _, _, rules = fn_representation(n)
    word = fn_word(n, k - 1, budget=10 ** 9, use_numba=False)
    lab, cells = word.labels, word.cells
    args = (lab, cells, rules.offsets, rules.lengths, rules.data)
    out_nb = _kernels.expand(*args, use_numba=True)  # warm-up compiles
    out_np = _kernels.expand(*args, use_numba=False)
    assert all(np.array_equal(a, b) for a, b in zip(out_nb, out_np))
    big, big_cells = out_np
    t_nb = _kernels.edge_tally(big, big_cells, n, n + 1, use_numba=True)
    t_np = _kernels.edge_tally(big, big_cells, n, n + 1, use_numba=False)
    assert np.array_equal(t_nb, t_np)

    print(f"f_{n}, expanding word {k - 1} ({lab.size:,} labels) into word {k} ({big.size:,} labels)")
    print(f"{'kernel':<8} {'backend':<7} {'best of ' + str(repeat):>12}")
    for name, call in [
        ("expand", lambda flag: _kernels.expand(*args, use_numba=flag)),
        ("tally", lambda flag: _kernels.edge_tally(big, big_cells, n, n + 1, use_numba=flag)),
    ]:
        times = {}
        for flag, label in ((True, "numba"), (False, "numpy")):
            times[label] = min(timeit.repeat(lambda: call(flag), number=1, repeat=repeat))
            print(f"{name:<8} {label:<7} {times[label] * 1e3:>10.2f} ms")
        print(f"{name:<8} speedup {times['numpy'] / times['numba']:>10.2f}x")
    return 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=26)
    p.add_argument("--repeat", type=int, default=5)
    a = p.parse_args(argv)
    return bench(a.n, a.k, a.repeat)


if __name__ == "__main__":
    sys.exit(main())
