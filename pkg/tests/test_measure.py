import math
import time
from fractions import Fraction

from sigmagroups.measure import (abelian_quotient_counts, brute_force_meas_c, eta,
                                 full_rank_formula, full_rank_fraction, meas_ab_formula,
                                 meas_c_formula, meas_formula, monte_carlo_counts, recursion_check)
from sigmagroups.pc.abelian import AbelianType, abelian_invariants
from sigmagroups.pcover import p_cover
from sigmagroups.sigma import find_gi_automorphism


def test_eta():
    assert eta(0, 3) == 1
    assert eta(2, 3) == Fraction(16, 27)
    assert eta(3, 3) == Fraction(416, 729)


def test_meas_c_formula_class2(class2):
    got = []
    for n in class2:
        sd = find_gi_automorphism(n.pres)
        h = p_cover(n.pres).h
        got.append(meas_c_formula(sd.y_size, sd.aut_sigma_order, n.pres.order, 2, h, 3))
    assert got == [Fraction(208, 243), Fraction(104, 729), Fraction(1, 729)]
    assert sum(got) == 1


def test_meas_c_formula_specializations():
    # p = 3, g = 2: 432 y / (|Aut_sigma| |G|) times prod_{k=4-h}^{3} (1 - 3^-k)
    for h in range(4):
        prod = Fraction(1)
        for k in range(4 - h, 4):
            prod *= 1 - Fraction(1, 3 ** k)
        assert meas_c_formula(3, 48, 27, 2, h, 3) == Fraction(432 * 3, 48 * 27) * prod
    # h = 0 collapses to y p^(g(g+1)) eta_g / (|Aut_sigma| |G|)
    assert meas_c_formula(1, 3888, 243, 2, 0, 3) == Fraction(729, 3888 * 243) * eta(2, 3)
    assert meas_c_formula(3, 48, 27, 2, 4, 3) == 0
    assert meas_formula(3, 48, 27, 2, 4, 3) == 0


def test_terminal_measures(tree3):
    nodes = tree3.nodes.values()
    m81 = sorted(n.meas for n in nodes if n.order_exp == 4 and n.meas)
    assert m81 == sorted([Fraction(1664, 6561)] * 2 + [Fraction(3328, 19683)])
    r2 = sorted(n.meas for n in nodes if n.order_exp == 5 and n.meas and n.r == 2)
    assert r2 == [Fraction(832, 59049), Fraction(1664, 59049)]


def test_meas_zero_iff_not_schur_plus1(tree3):
    for n in tree3.nodes.values():
        assert (n.meas != 0) == (n.schur_class.value == "SchurPlus1Group")


def test_meas_ab_formula():
    A = AbelianType.parse("[3,3]")
    assert meas_ab_formula(A, at_class=1) == 1
    assert meas_ab_formula(A) == Fraction(208, 243)
    assert meas_ab_formula(AbelianType.parse("[3,9]"), at_class=2) == Fraction(104, 729)
    assert meas_ab_formula(AbelianType.parse("[9,9]"), at_class=2) == Fraction(1, 729)


def test_abelian_oracle_class2():
    counts = abelian_quotient_counts(3, 2, 2)
    assert sum(counts.values()) == 1
    for a, m in counts.items():
        assert meas_ab_formula(a, at_class=2) == m


def test_abelian_oracle_class3():
    counts = abelian_quotient_counts(3, 2, 3)
    assert sum(counts.values()) == 1
    for t in ["[3,3]", "[3,9]", "[9,9]", "[9,27]", "[27,27]"]:
        a = AbelianType.parse(t)
        assert counts.get(a, 0) == meas_ab_formula(a, at_class=3), t
    for a, m in counts.items():
        assert meas_ab_formula(a, at_class=3) == m


def test_abelian_vs_nonabelian_at_class2(tree3):
    # sum of Meas_2 over ancestors of class <= 2 with abelianization A equals Meas_2^ab(A)
    totals = {}
    for n in tree3.nodes.values():
        if n.p_class > 2:
            continue
        m = n.meas_c if n.p_class == 2 else n.meas
        a = abelian_invariants(n.pres)
        totals[a] = totals.get(a, 0) + m
    for t in ["[3,3]", "[3,9]", "[9,9]"]:
        a = AbelianType.parse(t)
        assert totals.get(a, 0) == meas_ab_formula(a, at_class=2 if a.p_class == 2 else None)
    # C3 x C3 itself is not a Schur+1 sigma-group, so only G_1 contributes
    assert tree3.nodes["R"].meas == 0


def test_full_rank_fractions():
    assert full_rank_fraction(1, 3) == Fraction(8, 9) == full_rank_formula(1, 3)
    assert full_rank_fraction(2, 3) == full_rank_formula(2, 3)


def test_full_rank_independent_count():
    from itertools import product
    good = 0
    for m in product(range(3), repeat=6):
        rows = [m[0:2], m[2:4], m[4:6]]
        if any((a[0] * b[1] - a[1] * b[0]) % 3 for i, a in enumerate(rows) for b in rows[i + 1:]):
            good += 1
    assert Fraction(good, 3 ** 6) == full_rank_formula(2, 3)


def test_brute_force_class2(fq2):
    t = time.time()
    classes = brute_force_meas_c(fq2)
    assert time.time() - t < 60
    assert [c.measure for c in classes] == [Fraction(624, 729), Fraction(104, 729), Fraction(1, 729)]
    assert [c.pres.n for c in classes] == [3, 4, 5]
    assert sum(c.measure for c in classes) == 1


def test_brute_force_matches_formula(fq2, class2):
    classes = brute_force_meas_c(fq2)
    assert [c.measure for c in classes] == [n.meas_c for n in class2]


def test_recursion_on_tree(tree3):
    assert tree3.recursion_failures() == []
    g1 = tree3.nodes["R.2"]
    kids = tree3.children("R.2")
    assert recursion_check(g1.meas_c, g1.meas, [k.meas_c for k in kids])
    assert sum(k.meas_c for k in kids) == Fraction(208, 243)
    root = tree3.nodes["R"]
    assert root.meas_c == 1
    assert recursion_check(1, root.meas, [k.meas_c for k in tree3.children("R")])


def test_monte_carlo_class2(fq2):
    n = 100_000
    res = monte_carlo_counts(fq2, n, seed=11)
    est = res.estimates()
    assert sum(res.counts.values()) == n
    g1 = [fp for fp in est if fp.order_exp == 3]
    assert len(g1) == 1
    p = 624 / 729
    assert abs(est[g1[0]][0] - p) < 4 * math.sqrt(p * (1 - p) / n)


def test_monte_carlo_determinism(fq2):
    a = monte_carlo_counts(fq2, 3000, seed=5)
    b = monte_carlo_counts(fq2, 3000, seed=5)
    assert a.counts == b.counts
    c = monte_carlo_counts(fq2, 3000, seed=5, threads=2)
    assert c.counts == a.counts
    assert monte_carlo_counts(fq2, 0, seed=5).estimates() == {}
