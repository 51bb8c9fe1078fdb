from fractions import Fraction
from itertools import permutations

import pytest

from sigmagroups.explorer import Budget, explore_ipads, entries_from, ipad_measure_table
from sigmagroups.ipad import Ipad, ipad_le, ipad_of, stable_branch

from conftest import TOP_TEN, TOP_TEN_MEASURES
from helpers import elementary


def quotient_by_exponents(a, b):
    # a is a quotient type of b iff its sorted exponents are dominated entrywise
    ea = sorted((x for x in a.exponents), reverse=True)
    eb = sorted((x for x in b.exponents), reverse=True)
    if len(ea) > len(eb):
        return False
    return all(x <= y for x, y in zip(ea, eb))


def le_by_permutations(a, b):
    if not quotient_by_exponents(a.top, b.top):
        return False
    return any(all(quotient_by_exponents(x, y) for x, y in zip(a.layer, perm))
               for perm in permutations(b.layer))


def test_parse_and_canonical_string():
    for t in TOP_TEN:
        assert str(Ipad.parse(t)) == t
        assert Ipad.parse(t).layer_size_ok(2)
    assert str(Ipad.parse("[[3,3];[3,9][3,3][3,3][3,3]]")) == "[[3,3]; [3,3]^3 [3,9]]"
    for bad in ["[3,3]", "[[3,3]; ]", "[[3,3]; [3,3] junk]"]:
        with pytest.raises(ValueError):
            Ipad.parse(bad)
    assert not Ipad.parse("[[3,3]; [3,3]^3]").layer_size_ok(2)


def test_ipad_of_elementary_abelian():
    assert str(ipad_of(elementary(3, 2))) == "[[3,3]; [3]^4]"


def test_ipad_of_order_81_and_243(tree3):
    nodes = tree3.nodes.values()
    i1 = [n for n in nodes if n.order_exp == 4 and n.meas and str(n.ipad) == TOP_TEN[0]]
    assert sorted(n.meas for n in i1) == [Fraction(3328, 19683), Fraction(1664, 6561)]
    assert sum(n.meas for n in i1) == Fraction(8320, 19683)
    r2 = {n.meas: str(n.ipad) for n in nodes if n.order_exp == 5 and n.meas and n.r == 2}
    assert r2[Fraction(1664, 59049)] == TOP_TEN[4]
    assert r2[Fraction(832, 59049)] == TOP_TEN[8]


def test_order_matches_permutation_oracle(tree3):
    ipads = sorted({n.ipad for n in tree3.nodes.values()} | {Ipad.parse(t) for t in TOP_TEN})
    for a in ipads:
        for b in ipads:
            assert ipad_le(a, b) == le_by_permutations(a, b), (a, b)


def test_order_axioms(tree3):
    ipads = sorted({n.ipad for n in tree3.nodes.values()} | {Ipad.parse(t) for t in TOP_TEN})
    le = {(a, b): ipad_le(a, b) for a in ipads for b in ipads}
    for a in ipads:
        assert le[a, a]
        for b in ipads:
            if a != b:
                assert not (le[a, b] and le[b, a])
            for c in ipads:
                if le[a, b] and le[b, c]:
                    assert le[a, c]


def test_order_example():
    a = Ipad.parse("[[3,3]; [3,3]^3 [3,9]]")
    b = Ipad.parse("[[3,3]; [3,3]^3 [9,9]]")
    # [3,9] is a quotient of [9,9] and [3,3]^3 matches itself
    assert ipad_le(a, b) and not ipad_le(b, a)
    with pytest.raises(ValueError):
        ipad_le(a, Ipad.parse("[[3]; [1]]"))


def test_monotone_on_tree_edges(tree3):
    for parent, child in tree3.edges():
        assert ipad_le(tree3.nodes[parent].ipad, tree3.nodes[child].ipad)


def test_stable_branch_under_g1(tree3):
    from sigmagroups.explorer import annotate, child_nodes
    from sigmagroups.pcover import p_cover
    target = Ipad.parse("[[3,3]; [3,9]^4]")
    g1 = tree3.nodes["R.2"]
    kids = [k for k in tree3.children("R.2") if k.ipad == target]
    assert len(kids) == 2
    verdicts = []
    for k in kids:
        assert not stable_branch(g1.pres, k.pres)
        grand = []
        for d, i in child_nodes(k, p_cover(k.pres)):
            c, _ = annotate(d.pres, d.sigma, d.aut_sigma_gens, d.aut_sigma_order, i, k.id)
            if c.is_ancestor:
                grand.append(c)
        assert len(grand) == 1
        verdicts.append(stable_branch(k.pres, grand[0].pres))
    # exactly one of the pair leads to a stable branch
    assert sorted(verdicts) == [False, True]


def test_full_exploration_partitions_unity(top_ten):
    ex = explore_ipads(3, 2, Budget(max_order=8), top_ten)
    assert not ex.open_nodes
    total = sum(m for _, m, _, _ in ex.credits) + sum(m for _, m, _ in ex.pruned)
    assert total == 1
    entries = entries_from(ex, top_ten)
    assert [str(e.ipad) for e in entries[:10]] == TOP_TEN
    assert all(0 <= e.measure <= 1 for e in entries)
    # the first entry off the list is the stable [3,9]^4 branch
    assert str(entries[10].ipad) == "[[3,3]; [3,9]^4]" and entries[10].measure == Fraction(208, 59049)


def test_small_budget_never_wrong(top_ten):
    exact = {t: Fraction(m) for t, (m, _) in zip(TOP_TEN, TOP_TEN_MEASURES)}
    entries = ipad_measure_table(3, 2, Budget(max_order=5), top_ten)
    assert any(e.status == "lower-bound" for e in entries)
    for e in entries:
        if str(e.ipad) not in exact:
            continue
        if e.status == "exact":
            assert e.measure == exact[str(e.ipad)]
        else:
            assert e.measure <= exact[str(e.ipad)]


def test_untargeted_small_run():
    # no open subtree at order 3^5 lies below the two order-81 IPADs, so they are already closed
    entries = ipad_measure_table(3, 2, Budget(max_order=4))
    assert [(str(e.ipad), e.measure, e.status) for e in entries] == [
        (TOP_TEN[0], Fraction(8320, 19683), "exact"), (TOP_TEN[1], Fraction(1664, 6561), "exact")]
