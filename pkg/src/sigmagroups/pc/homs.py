"""Homomorphisms between pc groups, kernels, automorphisms and isomorphism tests.

Maps are given by the images of the weight-1 generators; images of deeper
generators follow from the source's definitions. Automorphisms and
isomorphisms are found by lifting through the lower p-central series one
layer at a time. A valid map into G/P_k lifts to G/P_{k+1} either for every
choice of the new layer offsets or for none, because every relator lies in
the Frattini subgroup of the free group and the new layer is central of
exponent p. So each level costs one relation check per surviving candidate.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterator, Sequence

from .. import linalg
from .presentation import BoundExceeded, Elem, PcPresentation, evaluate_elem
from .subgroups import Subgroup, normal_closure

AUTOMORPHISM_BOUND = 8  # exponent: p**8


class RelationViolation(ValueError):
    """Raised when proposed images do not respect the source relations."""


class Homomorphism:
    __slots__ = ("source", "target", "images", "all_images")

    def __init__(self, source: PcPresentation, target: PcPresentation,
                 images: Sequence[Elem], all_images: Sequence[Elem]):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.all_images = tuple(all_images)

    def __call__(self, x: Elem) -> Elem:
        return evaluate_elem(self.all_images, x, self.target)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """other after self."""
        imgs = [other(y) for y in self.all_images]
        return Homomorphism(self.source, other.target, imgs[:self.source.d], imgs)

    def is_epimorphism(self) -> bool:
        tgt = self.target
        d = tgt.d
        rows = [tuple(y[:d]) for y in self.images]
        return linalg.rank(rows, tgt.p) == d if rows else d == 0

    def is_identity(self) -> bool:
        return self.source is self.target and all(
            y == self.source.gen(k) for k, y in enumerate(self.all_images))

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.source == other.source
                and self.target == other.target and self.all_images == other.all_images)

    def __hash__(self):
        return hash(self.all_images)

    def __repr__(self):
        return f"Homomorphism({self.source!r} -> {self.target!r})"


def relations_hold(src: PcPresentation, all_images: Sequence[Elem], dst: PcPresentation) -> bool:
    for key in src.relation_keys():
        lhs = src.relation_lhs(key, all_images, dst)
        rhs = evaluate_elem(all_images, src.relation_rhs(key), dst)
        if lhs != rhs:
            return False
    return True


def hom_from_images(src: PcPresentation, dst: PcPresentation, images: Sequence[Elem]) -> Homomorphism:
    """Homomorphism from images of the weight-1 generators of src.

    `images` may also list one image per pc generator of src, which is
    required when src carries no definitions.
    """
    images = [tuple(y) for y in images]
    for y in images:
        if len(y) != dst.n:
            raise ValueError("image has wrong length for target")
    if len(images) == src.n and (src.n != src.d or not src.has_definitions()):
        all_images = images
    elif len(images) == src.d:
        all_images = src.generator_images(images, dst)
    else:
        raise ValueError(f"expected {src.d} images, got {len(images)}")
    if not relations_hold(src, all_images, dst):
        raise RelationViolation("images do not satisfy the source relations")
    return Homomorphism(src, dst, all_images[:src.d], all_images)


def is_epimorphism(h: Homomorphism) -> bool:
    return h.is_epimorphism()


def kernel(h: Homomorphism) -> Subgroup:
    """ker h as a subgroup of the source.

    Sifts the graph {(h(x), x)} inside target x source with the target
    coordinates first; graph elements whose leading entry falls in the
    source part are exactly the kernel elements.
    """
    src, dst = h.source, h.target
    prod_pres = direct_product(dst, src)
    m = dst.n
    graph = Subgroup(prod_pres, [y + src.gen(k) for k, y in enumerate(h.all_images)])
    gens = [t[m:] for k, t in graph.table.items() if k >= m]
    return Subgroup(src, gens)


def direct_product(a: PcPresentation, b: PcPresentation) -> PcPresentation:
    """a x b with a's generators first; every generator gets weight 1.

    The weights are placeholders; the result is only meant for subgroup work.
    """
    na, nb = a.n, b.n
    za, zb = (0,) * na, (0,) * nb
    power = [v + zb for v in a.power] + [za + v for v in b.power]
    comm = {}
    for (j, i), v in a.comm.items():
        comm[(j, i)] = v + zb
    for (j, i), v in b.comm.items():
        comm[(na + j, na + i)] = za + v
    return PcPresentation(a.p, [1] * (na + nb), power, comm, definitions={})


# ---- lifting search ---------------------------------------------------------

def _layer_bounds(pres: PcPresentation) -> list[int]:
    """m[k] = number of generators of weight <= k, for k = 0..class."""
    return [sum(1 for w in pres.weights if w <= k) for k in range(pres.p_class + 1)]


def lift_search(src: PcPresentation, dst: PcPresentation,
                start: Iterator[tuple[Elem, ...]],
                check: Callable[[int, PcPresentation, list[Elem]], bool] | None = None,
                ) -> Iterator[tuple[Elem, ...]]:
    """Yield weight-1 image tuples in dst of homomorphisms src -> dst.

    `start` supplies image tuples in dst / P_1 (vectors of length d(dst)).
    `check(k, quotient, all_images)` may veto a candidate at level k; it sees
    the images of every src generator in dst / P_k.
    """
    if not src.has_definitions():
        raise ValueError("source lacks definitions; standardize first")
    c = dst.p_class
    bounds = _layer_bounds(dst)
    quots = {k: dst.truncate(k) for k in range(1, c + 1)}
    p = dst.p
    d = src.d

    def valid(k, imgs):
        q = quots[k]
        all_imgs = src.generator_images(list(imgs), q)
        if not relations_hold(src, all_imgs, q):
            return False
        return check is None or check(k, q, all_imgs)

    def rec(k, imgs):
        if k == c:
            yield imgs
            return
        lo, hi = bounds[k], bounds[k + 1]
        width = hi - lo
        zero_ext = tuple(y + (0,) * width for y in imgs)
        q = quots[k + 1]
        all_zero = src.generator_images(list(zero_ext), q)
        if not relations_hold(src, all_zero, q):
            return
        for offs in product(range(p), repeat=width * d):
            ext = tuple(y + offs[i * width:(i + 1) * width] for i, y in enumerate(imgs))
            if check is not None:
                all_imgs = src.generator_images(list(ext), q)
                if not check(k + 1, q, all_imgs):
                    continue
            yield from rec(k + 1, ext)

    if c == 0:
        return
    for imgs in start:
        imgs = tuple(tuple(y) for y in imgs)
        if valid(1, imgs):
            yield from rec(1, imgs)


def _invertible_starts(d: int, p: int, square: int | None = None) -> Iterator[tuple[Elem, ...]]:
    vecs = list(product(range(p), repeat=d))
    for rows in product(vecs, repeat=square if square is not None else d):
        if linalg.rank(rows, p) == d:
            yield rows


def automorphisms(pres: PcPresentation, bound: int = AUTOMORPHISM_BOUND,
                  commuting_with: Homomorphism | None = None) -> Iterator[Homomorphism]:
    """Every automorphism of pres exactly once (optionally only those commuting
    with a given automorphism)."""
    if pres.n > bound:
        raise BoundExceeded(f"group of order {pres.p}^{pres.n} exceeds automorphism bound {pres.p}^{bound}")
    src = pres
    check = None
    if commuting_with is not None:
        check = _commuting_check(pres, commuting_with)
    for imgs in lift_search(src, pres, _invertible_starts(pres.d, pres.p), check):
        all_imgs = src.generator_images(list(imgs), pres)
        yield Homomorphism(pres, pres, imgs, all_imgs)


def _commuting_check(pres: PcPresentation, sigma: Homomorphism):
    m = _layer_bounds(pres)

    def check(k, q, all_imgs):
        n = m[k]
        sig = [y[:n] for y in sigma.all_images[:n]]
        for i in range(pres.d):
            a = evaluate_elem(sig, all_imgs[i], q)
            b = evaluate_elem(all_imgs, sig[i], q)
            if a != b:
                return False
        return True
    return check


def automorphism_count(pres: PcPresentation, bound: int = AUTOMORPHISM_BOUND,
                       commuting_with: Homomorphism | None = None) -> int:
    return sum(1 for _ in automorphisms(pres, bound, commuting_with))


# ---- isomorphism --------------------------------------------------------------

def fingerprint(pres: PcPresentation) -> tuple:
    """Cheap isomorphism invariant: order, class, layer sizes, abelian type,
    IPAD layer and element-order profile of the Frattini quotient lifts."""
    from .abelian import abelian_invariants
    from .subgroups import maximal_subgroups
    layer = tuple(sorted(str(abelian_invariants(pres, m)) for m in maximal_subgroups(pres)))
    return (pres.p, pres.n, pres.p_class, tuple(pres.layer_dims()),
            str(abelian_invariants(pres)), layer, _order_profile(pres))


def _order_profile(pres: PcPresentation) -> tuple:
    if pres.n > 10:
        return ()
    counts: dict[int, int] = {}
    for x in pres.elements(10):
        o = pres.element_order(x)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def isomorphism(a: PcPresentation, b: PcPresentation,
                bound: int = AUTOMORPHISM_BOUND) -> Homomorphism | None:
    """An isomorphism a -> b, or None."""
    if a.p != b.p or a.n != b.n or a.d != b.d or a.layer_dims() != b.layer_dims():
        return None
    if a.n > bound + 2:
        raise BoundExceeded("groups too large for isomorphism search")
    if fingerprint(a) != fingerprint(b):
        return None
    std, coords = _with_definitions(a)
    for imgs in lift_search(std, b, _invertible_starts(b.d, b.p)):
        std_imgs = std.generator_images(list(imgs), b)
        return Homomorphism(a, b, imgs, [evaluate_elem(std_imgs, x, b) for x in coords])
    return None


def isomorphic(a: PcPresentation, b: PcPresentation, bound: int = AUTOMORPHISM_BOUND) -> bool:
    return isomorphism(a, b, bound) is not None


def _with_definitions(pres: PcPresentation):
    """A presentation with definitions on the same weight-1 generators, and the
    coordinates of each original pc generator in it."""
    if pres.has_definitions():
        return pres, [pres.gen(k) for k in range(pres.n)]
    from .consistency import decompose, standardize
    std, vals = standardize(pres)
    weights = list(std.weights)
    return std, [decompose(pres, vals, weights, pres.gen(k)) for k in range(pres.n)]


def conjugacy_class_count(pres: PcPresentation) -> int:
    """Number of conjugacy classes, by closing orbits under generator conjugation."""
    els = list(pres.elements(10))
    gens = [pres.gen(k) for k in range(pres.n)]
    seen = set()
    classes = 0
    for x in els:
        if x in seen:
            continue
        classes += 1
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = pres.conjugate(y, g)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
    return classes


def normal_closure_of(pres: PcPresentation, elems: Sequence[Elem]) -> Subgroup:
    return normal_closure(pres, elems)
