"""Exit criteria, one test per criterion at its stated tolerance.

Each test carries ``@pytest.mark.acceptance(number, title)``; the summary at
the end of the run prints one PASS/FAIL line per criterion.
"""
import math
from fractions import Fraction

import mpmath
import pytest

from periodcount.errors import DivisibilityViolation
from periodcount.numtheory import IntegerSequence, census, corollary2_check, phi1, phi2
from periodcount.pwl_oracle import count_solutions, make_fn, oracle_sequence
from periodcount.roots import dominant_root, growth_rate, log_root
from periodcount.sequences import RecurrenceFamily, remark2_D, thm3_phi, thm4_phi
from periodcount.symdyn import edge_counts, fixed_count_symbolic

acceptance = pytest.mark.acceptance
C8 = "roots within 1e-9; growth rate within 0.02 at m = 150, decreasing on 50, 100, 150; under 5 s"

SWEEP = ([RecurrenceFamily("thm3", n) for n in range(3, 9)]
         + [RecurrenceFamily("thm4", n) for n in range(2, 7)]
         + [RecurrenceFamily("thm5phi", n) for n in range(2, 7)]
         + [RecurrenceFamily("thm5psi", n) for n in range(2, 7)])


@acceptance(1, "congruence sweep, m <= 120, under 10 s")
def test_congruence_sweep(stopwatch):
    with stopwatch() as w:
        for fam in SWEEP:
            seq = fam.sequence(120)
            for m in range(1, 121):
                census(seq, m, fam.census_kind)  # raises on a non-zero remainder
            if fam.census_kind == "symmetric":
                assert all(phi2(m, seq) % (2 * m) == 0 for m in range(1, 121))
            else:
                assert all(phi1(m, seq) % m == 0 for m in range(1, 121))
    assert w.elapsed < 10


@acceptance(2, "oracle = symbolic = recurrence, n in 3..6, k <= 15, under 5 s")
def test_three_way_equivalence(stopwatch):
    with stopwatch() as w:
        for n in range(3, 7):
            rec = thm3_phi(n, 15)
            table = edge_counts(n, 15)
            oracle = oracle_sequence(make_fn(n), 15)
            for k in range(1, 16):
                assert oracle(k) == fixed_count_symbolic(n, k, table) == rec(k), (n, k)
    assert w.elapsed < 5
    assert count_solutions(make_fn(3), 15) == 1364


@acceptance(3, "Lucas values 1, 3, 4, 7, 11, 18, 29")
def test_lucas_reproduction():
    assert thm3_phi(3, 7).values(7) == [1, 3, 4, 7, 11, 18, 29]


@acceptance(4, "initial segment 2^m - 1 for m < n, recurrence and symbolic")
def test_initial_segment():
    for n in range(3, 9):
        seq = thm3_phi(n, n - 1)
        for m in range(1, n):
            assert seq(m) == 2 ** m - 1 == fixed_count_symbolic(n, m)


@acceptance(5, "Table 2 gating prefix 0, 1, 2, 4 and D(7, 2) = 34")
def test_table2_prefix():
    D = remark2_D(2, 7)
    assert D.values(4) == [0, 1, 2, 4]
    assert D(7) == 34


@acceptance(5, "Table 2 gating prefix 0, 1, 2, 4 and D(7, 2) = 34")
def test_table2_full_fixture_and_table1_diagnostic():
    from click.testing import CliRunner

    from periodcount.cli import main
    runner = CliRunner()
    t2 = runner.invoke(main, ["tables", "--which", "remark2"])
    assert t2.exit_code == 0
    assert t2.stdout.count(",ok,") == 125
    t1 = runner.invoke(main, ["tables", "--which", "remark1"])
    assert t1.exit_code == 0  # mismatches are reported but never gate


@acceptance(6, "D(m, n) = 2^(m-n) for n in 2..6, n <= m <= 3n")
def test_remark2_pattern():
    for n in range(2, 7):
        D = remark2_D(n, 3 * n)
        assert all(D(m) == 2 ** (m - n) for m in range(n, 3 * n + 1))


@acceptance(7, "power-map congruences, m <= 60")
def test_power_map_sweep():
    assert all(corollary2_check(m, n, "fixed") for n in range(2, 11) for m in range(1, 61))
    assert all(corollary2_check(m, n, "symmetric") for n in (3, 5, 7, 9) for m in range(1, 61))


@acceptance(8, C8)
def test_roots():
    assert abs(dominant_root("alpha", 3).mid - (1 + math.sqrt(5)) / 2) < 1e-9
    assert abs(dominant_root("gamma", 2).mid - (1 + math.sqrt(2))) < 1e-9


GROWTH = ([RecurrenceFamily("thm3", n) for n in range(3, 9)]
          + [RecurrenceFamily("thm4", n) for n in range(2, 7)]
          + [RecurrenceFamily(k, n) for k in ("thm5phi", "thm5psi") for n in range(2, 7)])
PRECISE_DIGITS = 250
PRECISE_TOL = Fraction(1, 10 ** 240)


@acceptance(8, C8)
def test_growth_convergence(stopwatch):
    with stopwatch() as w:
        for fam in GROWTH:
            seq = fam.sequence(150)
            op = phi2 if fam.census_kind == "symmetric" else phi1
            counted = IntegerSequence(lambda m, s=seq, op=op: op(m, s), f"census {fam}", 150)
            root = dominant_root(fam.root_kind, fam.n)
            precise = dominant_root(fam.root_kind, fam.n, PRECISE_TOL)
            for s in (seq, counted):
                assert abs(growth_rate(s, 150) - log_root(root)) < 0.02, fam
                # differences shrink below double precision, so compare at high precision
                target = log_root(precise, PRECISE_DIGITS)
                with mpmath.workdps(PRECISE_DIGITS):
                    errs = [abs(growth_rate(s, m, PRECISE_DIGITS) - target) for m in (50, 100, 150)]
                    assert errs[0] > errs[1] > errs[2], (fam, s.label)
    assert w.elapsed < 5


@acceptance(9, "edge-count identities for n in 3..6, k <= 40")
def test_edge_count_identities():
    for n in range(3, 7):
        a = edge_counts(n, 40)
        top = lambda k: a[k, n - 1, 1]  # noqa: E731
        for k in range(1, 40):
            for i in range(1, n):
                assert a[k + 1, i, 1] == a[k, i, 1] + a[k, i, n - 1]
                assert a[k + 1, i, 2] == a[k, i, 1]
                for j in range(3, n):
                    assert a[k + 1, i, j] == a[k, i, 1] + a[k, i, j - 1]
        for k in range(1, 41):
            for i in range(1, n - 1):
                for j in range(1, n):
                    if k + i <= 40:
                        assert a[k, n - 1, j] == a[k + i, n - 1 - i, j]
            if k >= 2:
                assert top(k) == sum(top(k - i) for i in range(1, n))
            assert fixed_count_symbolic(n, k, a) == sum((i + 1) * top(k - i) for i in range(n - 1))


@acceptance(10, "a value perturbed by +1 trips DivisibilityViolation for some m <= 30")
@pytest.mark.parametrize("fam", [RecurrenceFamily("thm3", 3), RecurrenceFamily("thm4", 4),
                                 RecurrenceFamily("thm5phi", 3), RecurrenceFamily("thm5psi", 2)], ids=str)
@pytest.mark.parametrize("at", [2, 7, 30])
def test_negative_control(fam, at):
    bad = fam.sequence(30).perturbed(at)
    with pytest.raises(DivisibilityViolation):
        for m in range(1, 31):
            census(bad, m, fam.census_kind)
