from itertools import product

import pytest

from sigmagroups.pc.consistency import is_consistent, standardize
from sigmagroups.pc.homs import isomorphic
from sigmagroups.pc.presentation import PcPresentation
from sigmagroups.pc.subgroups import Subgroup, lower_pcentral_series
from sigmagroups.pcover import (immediate_descendants, is_terminal, multiplicator_rank, p_cover,
                                sigma_descendants)
from sigmagroups.sigma import aut_sigma_order_brute, find_gi_automorphism


def test_cover_of_elementary_abelian_is_f2(fq2):
    cd = p_cover(PcPresentation(3, [1, 1]))
    assert cd.cover.n == 5 and cd.r == 3 and cd.h == 0
    assert isomorphic(cd.cover, fq2.pres)


def test_r_and_h_of_class2_ancestors(class2):
    got = [(p_cover(n.pres).r, p_cover(n.pres).h) for n in class2]
    assert got == [(4, 2), (4, 1), (5, 0)]


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_cover_structure(class2, idx):
    G = class2[idx].pres
    cd = p_cover(G)
    cover = cd.cover
    assert is_consistent(cover)
    assert cover.order == G.order * 3 ** cd.r
    # multiplicator: central, elementary abelian, and the quotient by it is G
    mult = cd.multiplicator
    gens = [cover.gen(k) for k in range(cover.n)]
    assert all(cover.mul(m, g) == cover.mul(g, m) for m in mult for g in gens)
    assert all(not any(cover.pow(m, 3)) for m in mult)
    assert cover.truncate(G.p_class).power == G.power
    # nucleus = P_c(G*), computed from subgroups alone
    series = lower_pcentral_series(cover)
    pc = series[G.p_class]
    assert Subgroup(cover, cd.nucleus_elements).key == pc.key
    assert cd.h <= cd.r


def test_g1_descendants_full_mode(class2):
    kids = immediate_descendants(class2[0].pres)
    assert len(kids) == 11
    G1 = class2[0].pres
    for k in kids:
        assert k.pres.p_class == 3
        assert isomorphic(k.pres.truncate(2), G1)
    assert sum(1 for k in kids if is_terminal(k.pres)) == 5


def test_g2_descendants_full_mode(class2):
    assert len(immediate_descendants(class2[1].pres)) == 31


def test_descendant_count_independent_of_presentation(fq2):
    from sigmagroups.measure import quotient_by_tuple
    seen = {}
    for tup in product(fq2.x_set, repeat=3):
        n, q = quotient_by_tuple(fq2.pres, tup)
        if q.n == 4 and n.key not in seen:
            seen[n.key] = standardize(q)[0]
        if len(seen) == 2:
            break
    counts = [len(immediate_descendants(q)) for q in seen.values()]
    assert counts == [31, 31]


def test_terminal(class2, tree3):
    assert not is_terminal(PcPresentation(3, [1, 1]))
    G3 = class2[2].pres
    assert not is_terminal(G3)
    cd = p_cover(G3)
    assert cd.h == 0 and len(cd.nucleus) == 5
    kids = tree3.children(class2[0].id)
    terminal = [k for k in kids if is_terminal(k.pres)]
    assert len(terminal) == 5
    for k in terminal:
        assert multiplicator_rank(k.pres) == p_cover(k.pres).h


def test_sigma_mode_matches_full_mode_for_g2(class2, tree3):
    node = class2[1]
    full = immediate_descendants(node.pres)
    with_gi = [d for d in full if find_gi_automorphism(d.pres, with_aut_order=False) is not None]
    sig = sigma_descendants(node.pres, node.sigma, node.aut_gens, node.aut_sigma_order)
    assert len(sig) == len(with_gi) == 31


def test_sigma_mode_root_children():
    from sigmagroups.explorer import root_node
    root, cd = root_node(3, 2)
    kids = sigma_descendants(root.pres, root.sigma, root.aut_gens, root.aut_sigma_order, cd)
    assert sorted(k.pres.n for k in kids) == [3, 3, 4, 4, 5]


def test_aut_sigma_recursion_matches_brute_force(tree3):
    nodes = [n for n in tree3.nodes.values() if n.order_exp <= 5]
    assert len(nodes) > 10
    for n in nodes:
        assert n.aut_sigma_order == aut_sigma_order_brute(n.sigma), n.id
