from collections import Counter

import numpy as np
import pytest

from sigmagroups import autos
from sigmagroups.freetower import build_free_quotient, projection
from sigmagroups.pc.presentation import BoundExceeded
from sigmagroups.pc.subgroups import derived_subgroup, whole_group


def test_shapes(fq1, fq2, fq3):
    assert fq1.pres.order == 9
    assert fq2.to_dict() == {"p": 3, "g": 2, "c": 2, "order_exp": 5, "frattini_size": 27,
                             "x_size": 9, "y_size": 3}
    # |F_3| is computed, not assumed: 3^10 for (p, g) = (3, 2)
    assert fq3.pres.n == 10
    assert len(fq3.x_set) == 729
    assert fq3.y_subgroup.order == 9


def test_x2_is_central_elementary_abelian(fq2):
    F = fq2.pres
    xs = fq2.x_set
    gens = [F.gen(k) for k in range(F.n)]
    assert all(F.mul(x, g) == F.mul(g, x) for x in xs for g in gens)
    assert all(F.mul(x, y) in set(xs) for x in xs for y in xs)
    assert all(not any(F.pow(x, 3)) for x in xs)


def test_sigma_is_gi_involution(fq2, fq3):
    for fq in (fq2, fq3):
        assert autos.is_involution(fq.sigma)
        F = fq.pres
        for i in range(fq.g):
            assert fq.sigma(F.gen(i))[:fq.g] == F.inv(F.gen(i))[:fq.g]


def test_bw_identity(fq2, fq3):
    for fq in (fq2, fq3):
        x_full = fq.x_full_size()
        assert x_full * fq.y_subgroup.order == fq.pres.order
        assert len(fq.x_set) == x_full // fq.p ** fq.g


def test_y_fixed_points_by_brute_force(fq2):
    F, s = fq2.pres, fq2.sigma
    assert sum(1 for x in F.elements() if s(x) == x) == 3


def test_phi_map_fibers(fq2, fq3):
    for fq in (fq2, fq3):
        images = Counter(fq.phi_map(t) for t in fq.frattini_elements())
        assert sorted(images) == fq.x_set
        assert set(images.values()) == {fq.frattini.order // len(fq.x_set)}
    assert fq2.phi_map(fq2.pres.identity) == fq2.pres.identity
    with pytest.raises(ValueError):
        fq2.phi_map(fq2.pres.gen(0))


def test_phi_map_is_inverse_square_modulo_commutators(fq2):
    F = fq2.pres
    der = derived_subgroup(whole_group(F))
    for t in fq2.frattini_elements():
        assert F.mul(fq2.phi_map(t), F.pow(t, 2)) in der


def test_x_set_closure(fq2):
    F = fq2.pres
    xs = set(fq2.x_set)
    assert F.identity in xs
    assert all(F.inv(x) in xs for x in xs)


def test_projection_x3_to_x2_constant_fibers(fq2, fq3):
    assert fq3.pres.truncate(2).power == fq2.pres.power
    assert fq3.pres.truncate(2).comm == fq2.pres.comm
    fibers = Counter(projection(fq3, fq2, x) for x in fq3.x_set)
    assert sorted(fibers) == fq2.x_set
    assert set(fibers.values()) == {81}
    fibers = Counter(projection(fq2, build_free_quotient(3, 2, 1), x) for x in fq2.x_set)
    assert fibers == Counter({(0, 0): 9})


def test_sampling_deterministic(fq2):
    a = fq2.sample_x_tuple(3, seed=7)
    assert a == fq2.sample_x_tuple(3, seed=7)
    assert len(a) == 3 and all(x in set(fq2.x_set) for x in a)
    assert fq2.sample_x_tuple(0, seed=7) == ()


def test_sampling_marginal_uniform(fq2):
    n = 100_000
    rng = np.random.default_rng(2024)
    counts = Counter(fq2.phi_map(t) for t in fq2.random_frattini(rng, n))
    expected = n / 9
    sd = (n * (1 / 9) * (8 / 9)) ** 0.5
    assert len(counts) == 9
    assert all(abs(c - expected) < 4 * sd for c in counts.values())


def test_bound():
    with pytest.raises(BoundExceeded):
        build_free_quotient(3, 2, 4)
    with pytest.raises(ValueError):
        build_free_quotient(2, 2, 2)
