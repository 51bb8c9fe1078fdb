import math
from itertools import product

import pytest

from sigmagroups.pc.abelian import AbelianType, abelian_invariants, automorphism_group_order
from sigmagroups.pc.consistency import is_consistent, standardize
from sigmagroups.pc.homs import (RelationViolation, automorphism_count, hom_from_images, isomorphic,
                                 kernel)
from sigmagroups.pc.presentation import BoundExceeded, PcPresentation
from sigmagroups.pc.subgroups import frattini, maximal_subgroups, normal_closure, quotient
from sigmagroups.pc.textio import PresentationSyntaxError, format_presentation, parse_presentation

from helpers import abelian, cyclic, elementary


# ---- a concrete model of F_2 for (p, g) = (3, 2) --------------------------------
# (x, y, z) in Z/9 x Z/9 x Z/3 with (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+y1 x2).
# It is 2-generated of order 3^5 with trivial P_2, hence isomorphic to F_2.

def m_mul(a, b):
    return ((a[0] + b[0]) % 9, (a[1] + b[1]) % 9, (a[2] + b[2] + a[1] * b[0]) % 3)


def m_inv(a):
    x, y, z = a
    return ((-x) % 9, (-y) % 9, (-z + y * x) % 3)


def m_pow(a, e):
    r = (0, 0, 0)
    for _ in range(e):
        r = m_mul(r, a)
    return r


def m_comm(a, b):
    return m_mul(m_inv(m_mul(b, a)), m_mul(a, b))


def model_images(F):
    imgs = [(1, 0, 0), (0, 1, 0)]
    for k in range(2, F.n):
        key = F.definitions[k]
        if key[0] == "p":
            imgs.append(m_pow(imgs[key[1]], 3))
        else:
            imgs.append(m_comm(imgs[key[1]], imgs[key[2]]))
    return imgs


def to_model(imgs, x):
    r = (0, 0, 0)
    for k, e in enumerate(x):
        r = m_mul(r, m_pow(imgs[k], e))
    return r


def test_collect_abelian_reordering():
    G = elementary(3, 2)
    assert G.collect([(1, 1), (0, 1)]) == (1, 1)
    assert G.collect([]) == G.identity


def test_collect_rejects_bad_index():
    with pytest.raises(IndexError):
        elementary(3, 2).collect([(5, 1)])


def test_f2_matches_cayley_table_of_model(fq2):
    F = fq2.pres
    imgs = model_images(F)
    els = list(F.elements())
    phi = {x: to_model(imgs, x) for x in els}
    assert len(set(phi.values())) == 243
    for x in els[::7]:
        for y in els:
            assert phi[F.mul(x, y)] == m_mul(phi[x], phi[y])


def test_f2_commutator_word(fq2):
    F = fq2.pres
    x1, x2 = F.gen(0), F.gen(1)
    w = F.collect([(1, -1), (0, -1), (1, 1), (0, 1)])
    assert w == F.inv(F.commutator(x1, x2))
    imgs = model_images(F)
    assert to_model(imgs, w) == m_comm((0, 1, 0), (1, 0, 0))


def test_collect_is_homomorphic(fq2):
    F = fq2.pres
    u = [(0, 2), (1, 1), (3, 1)]
    v = [(1, 2), (0, 1), (4, 2)]
    assert F.collect(u + v) == F.mul(F.collect(u), F.collect(v))
    x = F.collect(u)
    assert F.collect([(k, e) for k, e in enumerate(x)]) == x


def test_consistency_checks(fq2):
    assert is_consistent(elementary(3, 2))
    assert is_consistent(fq2.pres)
    # a_1^3 = a_2 forces a_2 to commute with a_1, so [a_2, a_1] = a_3 is impossible
    bad = PcPresentation(3, [1, 2, 3], [(0, 1, 0), (0, 0, 0), (0, 0, 0)], {(1, 0): (0, 0, 1)})
    assert not is_consistent(bad)
    els = list(bad.elements())
    assert any(bad.mul(bad.mul(x, y), z) != bad.mul(x, bad.mul(y, z))
               for x in els for y in els for z in els)


def test_enumeration(fq2, fq3):
    assert len(list(elementary(3, 2).elements())) == 9
    assert len(list(fq2.pres.elements())) == 243
    assert fq3.pres.n == 10
    assert sum(1 for _ in fq3.pres.elements()) == 3 ** fq3.pres.n
    with pytest.raises(BoundExceeded):
        fq3.pres.elements(bound=9)


def test_abelian_invariants(class2, tree3):
    assert str(abelian_invariants(class2[0].pres)) == "[3,3]"
    assert str(abelian_invariants(cyclic(3, 2))) == "[9]"
    A = PcPresentation(3, [1, 1, 2], [(0, 0, 1), (0, 0, 0), (0, 0, 0)])
    assert str(abelian_invariants(A)) == "[3,9]"
    # the order-81 groups with IPAD [[3,3]; [3,3]^3 [3,9]] have a maximal subgroup of type [3,9]
    for n in tree3.nodes.values():
        if n.order_exp == 4 and str(n.ipad) == "[[3,3]; [3,3]^3 [3,9]]" and n.meas:
            types = sorted(str(abelian_invariants(n.pres, m)) for m in maximal_subgroups(n.pres))
            assert types == ["[3,3]", "[3,3]", "[3,3]", "[3,9]"]


def test_maximal_subgroups(class2):
    C = elementary(3, 2)
    ms = maximal_subgroups(C)
    assert len(ms) == 4
    assert all(m.order == 3 for m in ms)
    assert len({m.key for m in ms}) == 4
    G1 = class2[0].pres
    ms = maximal_subgroups(G1)
    assert len(ms) == 4 and all(m.order == 9 for m in ms)
    assert all(str(abelian_invariants(G1, m)) == "[3,3]" for m in ms)


def test_homomorphisms(fq2, class2):
    C = elementary(3, 2)
    C3 = elementary(3, 1)
    h = hom_from_images(C, C3, [C3.gen(0), C3.identity])
    assert h.is_epimorphism()
    assert kernel(h).order == 3
    # C3 x C3 -> C9 sending a_1 to a generator violates a_1^3 = 1
    C9 = cyclic(3, 2)
    with pytest.raises(RelationViolation):
        hom_from_images(C, C9, [C9.gen(0), C9.identity])
    # C9 -> C3 x C3 with a_1 -> a_1 is a valid non-injective map
    h = hom_from_images(C9, C, [C.gen(0)])
    assert kernel(h).order == 3
    # F_2 -> G_1 along a presenting quotient map
    F = fq2.pres
    G1 = class2[0].pres
    h = hom_from_images(F, G1, [G1.gen(0), G1.gen(1)])
    assert h.is_epimorphism() and kernel(h).order == 9
    # F_2 -> C3 x C3 has kernel Phi(F_2)
    h = hom_from_images(F, C, [C.gen(0), C.gen(1)])
    assert kernel(h).key == frattini(F).key and kernel(h).order == 27
    ident = hom_from_images(F, F, [F.gen(0), F.gen(1)])
    assert kernel(ident).order == 1


def test_automorphism_counts(class2):
    # independent counts: invertible 2x2 matrices mod 3 and units mod 9
    gl2 = sum(1 for a, b, c, d in product(range(3), repeat=4) if (a * d - b * c) % 3)
    assert automorphism_count(elementary(3, 2)) == gl2 == 48
    units = sum(1 for k in range(9) if math.gcd(k, 9) == 1)
    assert automorphism_count(cyclic(3, 2)) == units == 6
    for a in ["[3,3]", "[9]", "[3,9]", "[9,9]"]:
        A = AbelianType.parse(a)
        assert automorphism_group_order(A) == automorphism_count(abelian(A))


def test_isomorphism(fq2, tree3):
    from sigmagroups.measure import quotient_by_tuple
    assert not isomorphic(cyclic(3, 2), elementary(3, 2))
    # every G_1 tuple has the same kernel X_2; G_2 arises from four distinct kernels
    found = {}
    for tup in product(fq2.x_set, repeat=3):
        n, q = quotient_by_tuple(fq2.pres, tup)
        if q.n == 4 and n.key not in found:
            found[n.key] = standardize(q)[0]
    assert len(found) == 4
    first, *rest = found.values()
    assert all(isomorphic(first, b) for b in rest)
    r2 = [n for n in tree3.nodes.values() if n.order_exp == 5 and n.meas and n.r == 2]
    assert len(r2) == 2
    assert not isomorphic(r2[0].pres, r2[1].pres)


def test_quotient_by_normal_closure(fq2):
    F = fq2.pres
    n = normal_closure(F, [F.gen(2)])
    q, keep = quotient(F, n)
    assert q.order * n.order == F.order


def test_text_roundtrip(fq2):
    text = format_presentation(fq2.pres)
    again = parse_presentation(text)
    assert again.power == fq2.pres.power and again.comm == fq2.pres.comm
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("3 2\nw 1 1\nw 2 1\nc 2 1 : g1^1\n")
