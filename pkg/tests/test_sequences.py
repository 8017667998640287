import random

import pytest

from periodcount.errors import DomainError, HorizonTooSmall
from periodcount.numtheory import phi1, phi2
from periodcount.sequences import (RecurrenceFamily, conjecture_report, remark1_A, remark1_B,
                                   remark2_D, remark2_E, thm3_phi, thm4_b, thm4_phi, thm5_c,
                                   thm5_phi, thm5_psi)


def unrolled_b(n, kmax):
    """Dict-based b table written straight from the recursion, independent of the array code."""
    b = {}
    for j in range(1, n + 1):
        b[1, 1, j], b[2, 1, j] = 0, 1
        b[1, 2, j] = b[2, 2, j] = 1 if j == n else 0
    get = lambda k, i, j: b[k, i, j] if k > 0 else 0  # noqa: E731
    for k in range(1, kmax - 1):
        for i in (1, 2):
            for j in range(1, n):
                b[k + 2, i, j] = get(k, i, 1) + get(k, i, j + 1)
            b[k + 2, i, n] = get(k, i, 1) + get(k + 1, i, n)
    return get


def test_thm3_examples():
    assert thm3_phi(3, 7).values(7) == [1, 3, 4, 7, 11, 18, 29]
    assert thm3_phi(4, 6)(3) == 7
    assert thm3_phi(4, 6)(6) == 39
    with pytest.raises(DomainError):
        thm3_phi(2, 5)


def test_lucas_recurrence():
    s = thm3_phi(3, 200)
    assert all(s(m) == s(m - 1) + s(m - 2) for m in range(3, 201))


def test_thm4_table_examples():
    b = thm4_b(2, 6)
    assert (b[4, 1, 1], b[4, 1, 2]) == (2, 2)
    assert b[1, 2, 2] == 1
    assert b[-1, 1, 2] == 0
    b1 = thm4_b(1, 5, extend_n1=True)
    assert [b1[m, 2, 1] for m in range(1, 6)] == [1, 1, 2, 3, 5]


def test_thm4_n1_needs_flag():
    with pytest.raises(DomainError):
        thm4_b(1, 5)
    with pytest.raises(DomainError):
        RecurrenceFamily("thm4", 1)
    assert RecurrenceFamily("thm4", 1, extend_n1=True).sequence(5).values(5) == [1, 3, 4, 7, 11]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_thm4_table_matches_unrolled(n):
    table, ref = thm4_b(n, 40), unrolled_b(n, 40)
    assert all(table[k, i, j] == ref(k, i, j)
               for k in range(1, 41) for i in (1, 2) for j in range(1, n + 1))


def test_thm4_phi_examples():
    phi = thm4_phi(2, 10)
    assert phi(1) == 1
    assert phi(2) == 3
    assert phi(6) == 15
    assert phi1(6, phi) == 12


def test_thm5_table_examples():
    c = thm5_c(2, 5)
    assert (c[2, 1, 1], c[2, 1, 2], c[2, 1, -1], c[2, 1, -2]) == (1, 1, 1, 0)
    assert c[1, 1, 2] == 1
    assert c[4, 1, -2] == 3
    with pytest.raises(DomainError):
        thm5_c(1, 3)


def test_thm5_examples():
    assert thm5_phi(2, 4).values(4) == [3, 7, 15, 35]
    psi = thm5_psi(2, 4)
    assert psi.values(4) == [1, 5, 13, 33]
    assert phi2(2, psi) == 4
    assert remark2_D(2, 2)(2) == 1


def test_table_cells_recompute_from_predecessors():
    rng = random.Random(7)
    for _ in range(1000):
        if rng.random() < 0.5:
            n = rng.randint(1, 6)
            t = thm4_b(n, 60, extend_n1=True)
            k, i, j = rng.randint(3, 60), rng.choice((1, 2)), rng.randint(1, n)
        else:
            n = rng.randint(2, 6)
            t = thm5_c(n, 60)
            k, i = rng.randint(2, 60), rng.choice((1, 2))
            j = rng.choice([v for v in range(-n, n + 1) if v])
        assert t[k, i, j] == t.recomputed(k, i, j)


FAMILIES = ([RecurrenceFamily("thm3", n) for n in range(3, 9)]
            + [RecurrenceFamily("thm4", n) for n in range(2, 7)]
            + [RecurrenceFamily("thm5phi", n) for n in range(2, 7)])


@pytest.mark.parametrize("fam", FAMILIES, ids=str)
def test_congruence_to_150(fam):
    s = fam.sequence(150)
    assert all(phi1(m, s) % m == 0 for m in range(1, 151))


@pytest.mark.parametrize("n", range(2, 7))
def test_symmetric_congruence_to_150(n):
    s = thm5_psi(n, 150)
    assert all(phi2(m, s) % (2 * m) == 0 for m in range(1, 151))


@pytest.mark.parametrize("n", range(2, 7))
def test_thm5_values_are_odd(n):
    assert all(v % 2 == 1 for v in thm5_phi(n, 120).values(120))
    assert all(v % 2 == 1 for v in thm5_psi(n, 120).values(120))


MONOTONE = ([RecurrenceFamily("thm3", n) for n in range(3, 9)]
            + [RecurrenceFamily(k, n) for k in ("thm5phi", "thm5psi") for n in range(2, 7)])


@pytest.mark.parametrize("fam", MONOTONE, ids=str)
def test_monotone_growth(fam):
    s = fam.sequence(151)
    assert all(s(m + 1) > s(m) for m in range(fam.n, 151))


@pytest.mark.parametrize("n", range(2, 7))
def test_b_family_grows_in_steps_of_two(n):
    # odd m lag far behind even m, so only the step-2 comparison is monotone
    v = thm4_phi(n, 151).values(151)
    assert all(v[m + 2] >= v[m] for m in range(149))
    assert v[2 * n] < v[2 * n - 1]


def test_remark1_A_examples():
    assert remark1_A(2, 5).values(5) == [1, 0, 1, 2, 4]
    assert remark1_A(4, 1)(1) == thm4_phi(4, 1)(1)


def test_remark2_D_examples():
    assert remark2_D(2, 7).values(7) == [0, 1, 2, 4, 8, 16, 34]
    assert remark2_D(3, 13)(13) == 1104


def test_B_first_level_is_a_difference():
    B = remark1_B(4, 3, 1)
    for (m, n, k), v in B.items():
        A = remark1_A(n, m + 3 * n + 2)
        assert v == A(m + 3 * n + 2) - 2 * A(m + 3 * n + 1)
    # cancellation case: where A doubles, B vanishes
    A2 = remark1_A(2, 12)
    zero_ms = [m for m in range(1, 4) if A2(m + 8) == 2 * A2(m + 7)]
    assert all(B[m, 2, 1] == 0 for m in zero_ms)


def test_B_recursion_and_conjecture_rows():
    B = remark1_B(3, 3, 3)
    assert all(B[1, n, k] == 2 for n in range(1, 4) for k in range(1, 4))
    assert all(B[2, n, k] == 4 * k for n in range(1, 4) for k in range(1, 4))


def test_E_matches_definition():
    E = remark2_E(3, 4, 2)
    for n in range(2, 5):
        D = remark2_D(n, 3 + 3 * n + 2)
        for m in range(1, 4):
            assert E[m, n, 1] == D(m + 3 * n) - 2 * D(m + 3 * n - 1)
    D2, D3 = remark2_D(2, 30), remark2_D(3, 30)
    e = lambda m, n, D: D(m + 3 * n) - 2 * D(m + 3 * n - 1)  # noqa: E731
    assert E[1, 2, 2] == e(5, 2, D2) - e(5, 3, D3)


def test_horizon_too_small_names_entry():
    with pytest.raises(HorizonTooSmall) as err:
        remark1_B(2, 2, 2, horizon=10)
    assert err.value.m > 10
    with pytest.raises(HorizonTooSmall):
        remark2_E(1, 2, 1, horizon=5)


def test_remark2_report_pattern_holds():
    report = conjecture_report("remark2", range(2, 7), range(1, 19), range(1, 4))
    rows = {r.claim: r for r in report.rows}
    assert rows["D-eq"].holds and rows["D-gt"].holds
    assert rows["E-i"].holds and "E_{1,n,k} = 2" in rows["E-i"].clause
    assert report.all_hold


def test_remark1_report_carries_extension_note():
    report = conjecture_report("remark1", range(1, 5), range(1, 15), range(1, 3))
    assert report.notes and "interpretation" in report.notes[0]
    assert {r.claim for r in report.rows} == {"A-eq", "A-gt", "B-i", "B-ii", "B-iii", "B-iv"}
    assert report.all_hold


def test_report_without_k_range_has_only_value_rows():
    report = conjecture_report("remark1", [2], range(1, 8), [])
    assert all(r.holds for r in report.rows)
    report = conjecture_report("remark2", [2], range(1, 12), [])
    assert [r.claim for r in report.rows] == ["D-eq", "D-gt"]


def test_empty_range_gives_empty_report():
    assert conjecture_report("remark2", [], [], []).rows == ()
    assert conjecture_report("remark1", range(1, 3), [], []).rows == ()
