"""p-covering groups, multiplicator and nucleus, and immediate descendants.

The p-cover G* of a class-c group G is built by the tails method: every
relation of G that is not a definition gets a new central generator of
order p appended to its right side, and the consistency overlaps of the
enlarged presentation give linear relations among the tails. The tails that
survive elimination span the p-multiplicator R/R*; the nucleus is P_c(G*).

Immediate descendants are the quotients G*/M for proper subspaces M of the
multiplicator with M + nucleus = multiplicator, one per orbit of the
automorphism group acting on the multiplicator.

In sigma mode only subspaces invariant under the lifted GI-automorphism are
enumerated, and orbits are taken under Aut_sigma(G). Each Aut(G)-orbit of
allowable subspaces that yields a descendant with a GI-automorphism meets the
invariant subspaces in exactly one Aut_sigma(G)-orbit, so the two modes list
the same descendants up to isomorphism. Generators and the order of
Aut_sigma of each descendant are carried along: the stabilizer of M in
Aut_sigma(G) lifts (after a correction that makes the lift commute with
sigma) and the central automorphisms x_i -> x_i l with l in the -1 part of
the new layer make up the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import autos, linalg
from .pc.consistency import consistency_pairs, is_consistent, standardize
from .pc.homs import AUTOMORPHISM_BOUND, Homomorphism, automorphisms
from .pc.presentation import Elem, InconsistentPresentation, PcPresentation, RelKey

Vec = tuple[int, ...]


@dataclass
class CoverData:
    base: PcPresentation
    cover: PcPresentation
    keys: list[RelKey]          # defining relation of each multiplicator generator
    nucleus: tuple[Vec, ...]    # RREF basis, in multiplicator coordinates
    _mats: dict = field(default_factory=dict, repr=False)

    @property
    def r(self) -> int:
        return self.cover.n - self.base.n

    @property
    def h(self) -> int:
        return self.r - len(self.nucleus)

    @property
    def multiplicator(self) -> list[Elem]:
        n = self.base.n
        return [self.cover.gen(n + k) for k in range(self.r)]

    @property
    def nucleus_elements(self) -> list[Elem]:
        return [self.embed(v) for v in self.nucleus]

    def embed(self, v: Sequence[int]) -> Elem:
        return (0,) * self.base.n + tuple(v)

    def pad(self, x: Elem) -> Elem:
        return tuple(x) + (0,) * self.r

    def lift_images(self, images: Sequence[Elem]) -> list[Elem]:
        """Images of every cover generator under the lift of a map of G given
        on the weight-1 generators (deeper generators via cover definitions)."""
        return self.cover.generator_images([self.pad(y) for y in images], self.cover)

    def action_matrix(self, aut: Homomorphism) -> list[Vec]:
        """Matrix (row convention) of the induced action on the multiplicator."""
        key = aut.images
        m = self._mats.get(key)
        if m is None:
            n = self.base.n
            lifted = self.lift_images(aut.images)
            m = []
            for k in range(self.r):
                y = lifted[n + k]
                if any(y[:n]):
                    raise InconsistentPresentation("lifted map does not preserve the multiplicator")
                m.append(tuple(y[n:]))
            if linalg.image_of_span(self.nucleus, m, self.base.p) != self.nucleus:
                raise InconsistentPresentation("induced action does not stabilize the nucleus")
            self._mats[key] = m
        return m

    def is_allowable(self, space: Sequence[Vec]) -> bool:
        p = self.base.p
        return (len(space) < self.r
                and linalg.rank(list(space) + list(self.nucleus), p) == self.r)

    def quotient(self, space: Sequence[Vec]) -> "AllowableQuotient":
        return AllowableQuotient(self, linalg.span_key(space, self.base.p))


class AllowableQuotient:
    """G*/M for a subspace M of the multiplicator."""

    def __init__(self, cd: CoverData, space: tuple[Vec, ...]):
        self.cd = cd
        self.space = space
        p = cd.base.p
        n = cd.base.n
        red, pivots = linalg.rref(space, p) if space else ([], [])
        self._red = list(zip(red, pivots))
        self.keep = [k for k in range(cd.r) if k not in pivots]
        cov = cd.cover
        pos = {n + k: n + i for i, k in enumerate(self.keep)}
        power = [self.project(v) for v in cov.power[:n]]
        power += [(0,) * (n + len(self.keep))] * len(self.keep)
        comm = {(j, i): self.project(v) for (j, i), v in cov.comm.items() if j < n}
        defs = {}
        for k, key in cov.definitions.items():
            if k < n:
                defs[k] = key
            elif k in pos:
                defs[pos[k]] = key
        weights = list(cov.weights[:n]) + [cov.weights[n]] * len(self.keep)
        self.pres = PcPresentation(p, weights, power, comm, defs)

    def project(self, x: Elem) -> Elem:
        cd = self.cd
        p = cd.base.p
        n = cd.base.n
        t = list(x[n:])
        for row, pc in self._red:
            f = t[pc]
            if f:
                t = [(a - f * b) % p for a, b in zip(t, row)]
        return tuple(x[:n]) + tuple(t[k] for k in self.keep)

    def induced(self, images: Sequence[Elem]) -> Homomorphism:
        """Map of the quotient induced by a map of G (given on weight-1
        generators) whose lift stabilizes M."""
        return autos.from_weight1(self.pres, [self.project(self.cd.pad(y)) for y in images])


def p_cover(G: PcPresentation, verify: bool = True) -> CoverData:
    """The p-covering group of G with its multiplicator and nucleus."""
    if not G.has_definitions():
        G, _ = standardize(G)
    p, n, c = G.p, G.n, G.p_class
    def_keys = set(G.definitions.values())
    keys = [k for k in G.relation_keys() if k not in def_keys]
    m = len(keys)
    slot = {k: i for i, k in enumerate(keys)}
    zero_t = (0,) * m

    def with_tail(key, v):
        t = list(zero_t)
        if key in slot:
            t[slot[key]] = 1
        return tuple(v) + tuple(t)

    power = [with_tail(("p", j), G.power[j]) for j in range(n)] + [(0,) * (n + m)] * m
    comm = {}
    for j in range(n):
        for i in range(j):
            v = with_tail(("c", j, i), G.commutator_rel(j, i))
            if any(v):
                comm[(j, i)] = v
    pre = PcPresentation(p, list(G.weights) + [c + 1] * m, power, comm, definitions={})
    rels = []
    for a, b in consistency_pairs(pre, n):
        if a[:n] != b[:n]:
            raise InconsistentPresentation("base presentation is inconsistent")
        d = tuple((x - y) % p for x, y in zip(a[n:], b[n:]))
        if any(d):
            rels.append(d)
    red, pivots = linalg.rref(rels, p) if rels else ([], [])
    free = [k for k in range(m) if k not in pivots]
    fpos = {k: i for i, k in enumerate(free)}

    def reduce_tail(v):
        t = list(v[n:])
        for row, pc in zip(red, pivots):
            f = t[pc]
            if f:
                t = [(a - f * b) % p for a, b in zip(t, row)]
        return tuple(v[:n]) + tuple(t[k] for k in free)

    r = len(free)
    cpower = [reduce_tail(v) for v in power[:n]] + [(0,) * (n + r)] * r
    ccomm = {(j, i): reduce_tail(v) for (j, i), v in comm.items()}
    defs = dict(G.definitions)
    for k in free:
        defs[n + fpos[k]] = keys[k]
    cover = PcPresentation(p, list(G.weights) + [c + 1] * r, cpower, ccomm, defs)
    if verify and not is_consistent(cover):
        raise InconsistentPresentation("p-cover failed the consistency test")
    return CoverData(G, cover, [keys[k] for k in free], _nucleus(G, cover))


def _nucleus(G: PcPresentation, cover: PcPresentation) -> tuple[Vec, ...]:
    # P_c(G*) is spanned by p-th powers of the weight-c generators and their
    # commutators with the weight-1 generators; all of these are central.
    p, n, c = G.p, G.n, G.p_class
    top = G.layer(c)
    ones = G.layer(1)
    vecs = []
    for k in top:
        vecs.append(cover.power[k])
        for i in ones:
            if i < k:
                vecs.append(cover.commutator_rel(k, i))
    vecs = [v[n:] for v in vecs]
    return linalg.span_key([v for v in vecs if any(v)], p) if any(any(v) for v in vecs) else ()


def multiplicator_rank(G: PcPresentation) -> int:
    return p_cover(G, verify=False).r


def is_terminal(G: PcPresentation) -> bool:
    return not p_cover(G, verify=False).nucleus


# ---- descendants ---------------------------------------------------------------

@dataclass
class Descendant:
    pres: PcPresentation
    allowable_subgroup: tuple[Vec, ...]
    parent: object = None
    step: int = 0
    orbit_size: int = 1
    sigma: Homomorphism | None = None
    aut_sigma_gens: list[Homomorphism] = field(default_factory=list)
    aut_sigma_order: int | None = None


def _orbit_reps(cd: CoverData, spaces: list, mats: list) -> list[tuple]:
    p = cd.base.p

    def act(s, m):
        return linalg.image_of_span(s, m, p) if s else s
    orbits = autos.all_subspace_orbits(spaces, mats, act)
    out = [(o[0], len(o)) for o in orbits]
    out.sort(key=lambda t: (-len(t[0]), t[0]))
    return out


def allowable_subspaces(cd: CoverData, invariant_under: list[Vec] | None = None) -> list[tuple]:
    p = cd.base.p
    if invariant_under is None:
        spaces = linalg.all_subspaces(cd.r, p)
    else:
        plus = autos.eigenspace(invariant_under, 1, p)
        minus = autos.eigenspace(invariant_under, p - 1, p)
        if len(plus) + len(minus) != cd.r:
            raise InconsistentPresentation("lifted involution is not diagonalizable")
        spaces = autos.invariant_subspaces(plus, minus, p)
    return [tuple(s) for s in spaces if cd.is_allowable(s)]


def immediate_descendants(G: PcPresentation, auts: Sequence[Homomorphism] | None = None,
                          bound: int = AUTOMORPHISM_BOUND, cd: CoverData | None = None) -> list[Descendant]:
    """All immediate descendants up to isomorphism, one per Aut(G)-orbit of
    allowable subspaces. `auts` may be any generating set of Aut(G); by
    default every automorphism is enumerated."""
    if cd is None:
        cd = p_cover(G)
    G = cd.base
    if not cd.nucleus:
        return []
    if auts is None:
        auts = list(automorphisms(G, bound))
    mats = _distinct([cd.action_matrix(a) for a in auts])
    out = []
    for rep, size in _orbit_reps(cd, allowable_subspaces(cd), mats):
        q = cd.quotient(rep)
        out.append(Descendant(q.pres, rep, step=cd.r - len(rep), orbit_size=size))
    return out


def _distinct(mats):
    seen = set()
    out = []
    for m in mats:
        key = tuple(m)
        if key not in seen and key != tuple(linalg.identity(len(m))):
            seen.add(key)
            out.append(m)
    return out


def sigma_descendants(G: PcPresentation, sigma: Homomorphism, aut_gens: Sequence[Homomorphism],
                      aut_order: int, cd: CoverData | None = None) -> list[Descendant]:
    """Immediate descendants admitting a GI-automorphism, with their sigma,
    generators of Aut_sigma and its order.

    `aut_gens` must generate Aut_sigma(G) (automorphisms commuting with sigma)
    and `aut_order` is its order.
    """
    if cd is None:
        cd = p_cover(G)
    G = cd.base
    if not cd.nucleus:
        return []
    p = G.p
    s_mat = cd.action_matrix(sigma)
    gens = _distinct_auts(aut_gens)

    def act(s, a):
        return linalg.image_of_span(s, cd.action_matrix(a), p) if s else s

    mats = [cd.action_matrix(a) for a in gens]
    out = []
    for rep, size in _orbit_reps(cd, allowable_subspaces(cd, s_mat), mats):
        orbit, parent = autos.orbit_with_transversal(rep, gens, act)
        assert len(orbit) == size
        stab = autos.schreier_generators(orbit, parent, gens, act, autos.compose,
                                         autos.inverse, autos.identity_aut(G), autos.is_identity)
        q = cd.quotient(rep)
        Q = q.pres
        s_q = _involution(q.induced(sigma.images))
        lifts = [_commuting(q.induced(a.images), s_q) for a in _distinct_auts(stab)]
        central = _central_minus(Q, s_q)
        dim_minus = len(central) // max(Q.d, 1) if Q.d else 0
        order = aut_order // size * p ** (Q.d * dim_minus)
        assert (aut_order % size) == 0
        out.append(Descendant(Q, rep, step=cd.r - len(rep), orbit_size=size, sigma=s_q,
                              aut_sigma_gens=_distinct_auts(lifts + central), aut_sigma_order=order))
    return out


def _distinct_auts(auts):
    seen = set()
    out = []
    for a in auts:
        if a.all_images not in seen and not autos.is_identity(a):
            seen.add(a.all_images)
            out.append(a)
    return out


def _involution(s: Homomorphism) -> Homomorphism:
    """Correct a lift of an involution by a central factor so it squares to 1."""
    Q = s.source
    e = (Q.p - 1) // 2
    imgs = []
    for i in range(Q.d):
        x = Q.gen(i)
        z = Q.mul(Q.inv(x), s(s(x)))
        imgs.append(Q.mul(s.images[i], Q.pow(s(z), e)))
    out = autos.from_weight1(Q, imgs)
    if not autos.is_involution(out):
        raise InconsistentPresentation("could not correct lifted sigma to an involution")
    return out


def _commuting(a: Homomorphism, s: Homomorphism) -> Homomorphism:
    """Correct a lift a (commuting with s modulo the last layer) to commute with s."""
    Q = a.source
    e = (Q.p + 1) // 2
    imgs = []
    for i in range(Q.d):
        y = a.images[i]
        w = Q.mul(Q.inv(y), s(a(s.images[i])))
        imgs.append(Q.mul(y, Q.pow(w, e)))
    out = autos.from_weight1(Q, imgs)
    if not autos.commutes(out, s):
        raise InconsistentPresentation("could not correct lift to commute with sigma")
    return out


def _central_minus(Q: PcPresentation, s: Homomorphism) -> list[Homomorphism]:
    """Central automorphisms x_i -> x_i l with l in the -1 eigenspace of s on
    the last layer."""
    p = Q.p
    c = Q.p_class
    cols = Q.layer(c)
    minus = autos.eigenspace(autos.layer_matrix(s, c), p - 1, p)
    out = []
    for i in range(Q.d):
        for v in minus:
            l = [0] * Q.n
            for k, f in zip(cols, v):
                l[k] = f
            imgs = [Q.gen(j) for j in range(Q.d)]
            imgs[i] = Q.mul(imgs[i], tuple(l))
            out.append(autos.from_weight1(Q, imgs))
    return out
