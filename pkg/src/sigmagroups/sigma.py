"""GI-automorphisms, sigma statistics and Schur+1 classification.

A GI-automorphism is an automorphism of order 2 inverting G/Phi(G). Given
one, sigma acts on every layer of the lower p-central series, and since its
order is prime to p the fixed points multiply along the series:
y(G) = p^(sum of the +1 eigenspace dimensions). X(G) then has |G|/y(G)
elements.

The ancestor test works on the p-cover. A class-c group G is presented as
F_c/R by a (g+1)-tuple from X_c exactly when dim R/R^p[F_c,R] <= g+1 and
sigma inverts that quotient, and R/R^p[F_c,R] is the multiplicator of G
modulo its nucleus. So G is a Schur+1 sigma-ancestor iff h(G) <= g+1 and the
lifted sigma acts as -1 on multiplicator/nucleus. It is a Schur+1 sigma-group
iff r(G) <= g+1 and the lifted sigma is -1 on the whole multiplicator. The
verdict does not depend on the presenting epimorphism: any two
sigma-equivariant epimorphisms from F_c differ by a sigma-equivariant
automorphism of F_c. `ancestor_by_epimorphisms` runs the test the long way,
over explicit kernels in F_c, as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from . import autos, linalg
from .pc.homs import AUTOMORPHISM_BOUND, Homomorphism, automorphism_count, kernel, lift_search
from .pc.presentation import BoundExceeded, PcPresentation
from .pc.subgroups import Subgroup, normal_closure
from .pcover import CoverData, p_cover


class SchurClass(str, Enum):
    SCHUR_PLUS1_GROUP = "SchurPlus1Group"
    ANCESTOR_ONLY = "AncestorOnly"
    PSEUDO_SCHUR_PLUS1 = "PseudoSchurPlus1"
    NONE = "None"


@dataclass
class SigmaData:
    sigma: Homomorphism
    x_size: int
    y_size: int
    aut_sigma_order: int | None


def y_exponent(sigma: Homomorphism) -> int:
    """log_p y(G) from the +1 eigenspaces of sigma on the layers."""
    pres = sigma.source
    p = pres.p
    return sum(len(autos.eigenspace(autos.layer_matrix(sigma, w), 1, p))
               for w in range(1, pres.p_class + 1))


def y_size(sigma: Homomorphism) -> int:
    return sigma.source.p ** y_exponent(sigma)


def fixed_point_count(sigma: Homomorphism) -> int:
    """|Y(G, sigma)| by enumeration."""
    return sum(1 for x in sigma.source.elements() if sigma(x) == x)


def anti_fixed_count(sigma: Homomorphism) -> int:
    """|X(G, sigma)| by enumeration."""
    pres = sigma.source
    return sum(1 for x in pres.elements() if sigma(x) == pres.inv(x))


def gi_candidates(pres: PcPresentation):
    """Weight-1 image tuples of automorphisms inverting G/Phi(G), in
    lexicographic order of their Frattini offsets."""
    d, p = pres.d, pres.p
    start = [tuple(tuple((p - 1) if j == i else 0 for j in range(d)) for i in range(d))]
    return lift_search(pres, pres, iter(start))


def find_gi_automorphism(pres: PcPresentation, with_aut_order: bool = True,
                         bound: int = AUTOMORPHISM_BOUND) -> SigmaData | None:
    """The first GI-automorphism found, or None when there is none.

    The first automorphism inverting G/Phi(G) has order 2 p^k; its p^k-th
    power is then a GI-automorphism.
    """
    if not pres.has_definitions():
        raise ValueError("presentation lacks definitions; standardize first")
    for imgs in gi_candidates(pres):
        a = autos.from_weight1(pres, imgs)
        sigma = _involution_power(a)
        return sigma_data(sigma, with_aut_order, bound)
    return None


def _involution_power(a: Homomorphism) -> Homomorphism:
    p = a.source.p
    sq = autos.compose(a, a)
    e = 1
    cur = sq
    while not autos.is_identity(cur):
        cur = autos.power(cur, p)
        e *= p
    s = autos.power(a, e)
    assert autos.is_involution(s)
    return s


def sigma_data(sigma: Homomorphism, with_aut_order: bool = True,
               bound: int = AUTOMORPHISM_BOUND) -> SigmaData:
    pres = sigma.source
    y = y_size(sigma)
    aut = automorphism_count(pres, bound, commuting_with=sigma) if with_aut_order else None
    return SigmaData(sigma, pres.order // y, y, aut)


def is_gi_automorphism(sigma: Homomorphism) -> bool:
    pres = sigma.source
    p, d = pres.p, pres.d
    if not autos.is_involution(sigma):
        return False
    return all(sigma.images[i][:d] == tuple((p - 1) if j == i else 0 for j in range(d))
               for i in range(d))


# ---- cover-based tests -------------------------------------------------------

@dataclass
class CoverSigma:
    cd: CoverData
    matrix: list          # sigma on the multiplicator
    g: int

    @property
    def r(self) -> int:
        return self.cd.r

    @property
    def h(self) -> int:
        return self.cd.h

    def inverts_quotient(self) -> bool:
        """sigma is -1 on multiplicator / nucleus, i.e. (S + I)V lies in the nucleus."""
        p = self.cd.base.p
        nuc = list(self.cd.nucleus)
        base = linalg.rank(nuc, p)
        for k, row in enumerate(self.matrix):
            v = tuple((row[j] + (1 if j == k else 0)) % p for j in range(len(row)))
            if any(v) and linalg.rank(nuc + [v], p) > base:
                return False
        return True

    def inverts_multiplicator(self) -> bool:
        p = self.cd.base.p
        return all(row[j] == ((p - 1) if j == k else 0)
                   for k, row in enumerate(self.matrix) for j in range(len(row)))

    def is_ancestor(self) -> bool:
        return self.h <= self.g + 1 and self.inverts_quotient()

    def is_schur_plus1(self) -> bool:
        return self.r <= self.g + 1 and self.inverts_multiplicator()


def cover_sigma(sigma: Homomorphism, cd: CoverData | None = None) -> CoverSigma:
    pres = sigma.source
    if cd is None:
        cd = p_cover(pres, verify=False)
    return CoverSigma(cd, cd.action_matrix(sigma), pres.d)


def is_schur_plus1_ancestor(pres: PcPresentation, sigma: Homomorphism | None = None) -> bool:
    if sigma is None:
        sd = find_gi_automorphism(pres, with_aut_order=False)
        if sd is None:
            return False
        sigma = sd.sigma
    return cover_sigma(sigma).is_ancestor()


def classify_with_sigma(sigma: Homomorphism | None, cs: CoverSigma | None = None) -> SchurClass:
    if sigma is None:
        return SchurClass.NONE
    if cs is None:
        cs = cover_sigma(sigma)
    if cs.is_ancestor():
        return SchurClass.SCHUR_PLUS1_GROUP if cs.is_schur_plus1() else SchurClass.ANCESTOR_ONLY
    if cs.h <= cs.g + 1:
        return SchurClass.PSEUDO_SCHUR_PLUS1
    return SchurClass.NONE


def classify(pres: PcPresentation) -> SchurClass:
    sd = find_gi_automorphism(pres, with_aut_order=False)
    return classify_with_sigma(sd.sigma if sd else None)


# ---- brute-force cross-check over F_c -----------------------------------------

def sigma_equivariant_epimorphisms(fq, pres: PcPresentation, sigma: Homomorphism):
    """Every sigma-equivariant epimorphism F_c -> G, as weight-1 image tuples.

    Images of the free generators must lie in X(G, sigma) and generate G.
    """
    p, d = pres.p, pres.d
    if fq.g != d:
        return
    xs = [x for x in pres.elements() if sigma(x) == pres.inv(x)]
    for imgs in product(xs, repeat=d):
        if linalg.rank([y[:d] for y in imgs], p) < d:
            continue
        yield imgs


def relation_module(fq, r_bar: Subgroup) -> tuple[Subgroup, int]:
    """R* = R^p [F_c, R] and dim R / R*."""
    F = fq.pres
    gens = [F.pow(x, F.p) for x in r_bar.pcgs]
    gens += [F.commutator(x, F.gen(i)) for x in r_bar.pcgs for i in range(F.d)]
    star = normal_closure(F, [y for y in gens if any(y)])
    return star, r_bar.log_order - star.log_order


def ancestor_by_epimorphisms(fq, pres: PcPresentation, sigma: Homomorphism,
                             first_only: bool = True) -> list[tuple[int, bool]]:
    """(dim R/R*, sigma inverts R/R*) for the kernels of sigma-equivariant
    epimorphisms F_c -> G. The group is an ancestor iff some entry has
    dim <= g+1 and True."""
    from .pc.homs import hom_from_images
    F = fq.pres
    if pres.p_class > fq.c:
        raise ValueError("group class exceeds the free quotient class")
    seen = set()
    out = []
    for imgs in sigma_equivariant_epimorphisms(fq, pres, sigma):
        h = hom_from_images(F, pres, imgs)
        r_bar = kernel(h)
        if r_bar.key in seen:
            continue
        seen.add(r_bar.key)
        star, dim = relation_module(fq, r_bar)
        inv = all(F.mul(fq.sigma(x), x) in star for x in r_bar.pcgs)
        out.append((dim, inv))
        if first_only:
            break
    return out


def aut_sigma_order_brute(sigma: Homomorphism, bound: int = AUTOMORPHISM_BOUND) -> int:
    if sigma.source.n > bound:
        raise BoundExceeded("group too large for automorphism enumeration")
    return automorphism_count(sigma.source, bound, commuting_with=sigma)
