"""Automorphisms of pc groups as explicit generator maps.

An automorphism is a Homomorphism from a presentation to itself. Groups of
automorphisms are carried as generator lists with a known order; orbits on
subspaces and stabilizer generators come from `orbit_with_transversal` and
`schreier_generators`.
"""
from __future__ import annotations

from typing import Callable, Hashable, Sequence

from . import linalg
from .pc.homs import Homomorphism
from .pc.presentation import Elem, PcPresentation


def identity_aut(pres: PcPresentation) -> Homomorphism:
    gens = [pres.gen(k) for k in range(pres.n)]
    return Homomorphism(pres, pres, gens[:pres.d], gens)


def from_weight1(pres: PcPresentation, images: Sequence[Elem]) -> Homomorphism:
    all_imgs = pres.generator_images(list(images), pres)
    return Homomorphism(pres, pres, all_imgs[:pres.d], all_imgs)


def compose(first: Homomorphism, second: Homomorphism) -> Homomorphism:
    """second after first."""
    return first.then(second)


def is_identity(a: Homomorphism) -> bool:
    pres = a.source
    return all(y == pres.gen(k) for k, y in enumerate(a.all_images))


def layer_matrix(a: Homomorphism, w: int) -> list[tuple[int, ...]]:
    """Matrix (row convention) of the map induced on layer w of the lower
    p-central series; needs p-central weights."""
    pres = a.source
    cols = pres.layer(w)
    return [tuple(a.all_images[k][c] for c in cols) for k in cols]


def preimage(a: Homomorphism, x: Elem) -> Elem:
    """The unique y with a(y) = x, solved one layer at a time."""
    pres = a.source
    p = pres.p
    y = pres.identity
    rest = x
    for w in range(1, pres.p_class + 1):
        cols = pres.layer(w)
        if not cols:
            continue
        rows = [tuple(a.all_images[k][c] for c in cols) for k in cols]
        target = tuple(rest[c] for c in cols)
        coef = linalg.solve_in_span(rows, target, p)
        if coef is None:
            raise ValueError("map is not bijective on a layer")
        part = pres.identity
        for k, f in zip(cols, coef):
            if f:
                part = pres.mul(part, pres.gen(k, f))
        y = pres.mul(y, part)
        rest = pres.mul(pres.inv(a(part)), rest)
    if any(rest):
        raise ValueError("preimage did not converge")
    return y


def inverse(a: Homomorphism) -> Homomorphism:
    pres = a.source
    ys = [preimage(a, pres.gen(k)) for k in range(pres.d)]
    return from_weight1(pres, ys)


def power(a: Homomorphism, e: int) -> Homomorphism:
    pres = a.source
    if e < 0:
        a, e = inverse(a), -e
    out = identity_aut(pres)
    base = a
    while e:
        if e & 1:
            out = compose(out, base)
        e >>= 1
        if e:
            base = compose(base, base)
    return out


def commutes(a: Homomorphism, b: Homomorphism) -> bool:
    pres = a.source
    for k in range(pres.d):
        if b(a.all_images[k]) != a(b.all_images[k]):
            return False
    return True


def is_involution(s: Homomorphism) -> bool:
    pres = s.source
    return all(s(s.all_images[k]) == pres.gen(k) for k in range(pres.d))


def gl_generators(d: int, p: int) -> list[list[tuple[int, ...]]]:
    """A generating set of GL_d(F_p): elementary transvections and one
    diagonal matrix with a primitive root."""
    root = primitive_root(p)
    gens = []
    if d == 0:
        return gens
    diag = [list(r) for r in linalg.identity(d)]
    diag[0][0] = root % p
    if p > 2:
        gens.append([tuple(r) for r in diag])
    for i in range(d):
        for j in range(d):
            if i != j:
                m = [list(r) for r in linalg.identity(d)]
                m[i][j] = 1
                gens.append([tuple(r) for r in m])
    if d == 1 and p == 2:
        gens.append(linalg.identity(1))
    return gens


def gl_order(d: int, p: int) -> int:
    out = 1
    for k in range(d):
        out *= p ** d - p ** k
    return out


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = _prime_factors(p - 1)
    return next(r for r in range(2, p) if all(pow(r, (p - 1) // q, p) != 1 for q in qs))


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def matrix_aut(pres: PcPresentation, m: Sequence[Sequence[int]]) -> Homomorphism:
    """Automorphism of an elementary abelian group from a matrix (rows = images)."""
    return from_weight1(pres, [tuple(r) for r in m])


# ---- orbits ---------------------------------------------------------------------

def orbit_with_transversal(point: Hashable, gens: Sequence, act: Callable) -> tuple[list, dict]:
    """Breadth-first orbit of `point`; returns (orbit list, parent map).

    parent[y] = (x, i) means y = act(x, gens[i]); the root maps to None.
    """
    parent = {point: None}
    orbit = [point]
    i = 0
    while i < len(orbit):
        x = orbit[i]
        i += 1
        for gi, g in enumerate(gens):
            y = act(x, g)
            if y not in parent:
                parent[y] = (x, gi)
                orbit.append(y)
    return orbit, parent


def transversal_word(parent: dict, y) -> list[int]:
    word = []
    while parent[y] is not None:
        x, gi = parent[y]
        word.append(gi)
        y = x
    word.reverse()
    return word


def schreier_generators(orbit: list, parent: dict, gens: Sequence, act: Callable,
                        mul: Callable, inv: Callable, one, is_one: Callable) -> list:
    """Generators of the stabilizer of orbit[0] by Schreier's lemma.

    Elements act on the right: act(x, g h) = act(act(x, g), h), mul(g, h) = g then h.
    """
    cache = {orbit[0]: (one, one)}

    def trans(y):
        if y not in cache:
            x, gi = parent[y]
            u, ui = trans(x)
            cache[y] = (mul(u, gens[gi]), mul(inv_gens[gi], ui))
        return cache[y]

    inv_gens = [inv(g) for g in gens]
    out = []
    for x in orbit:
        u, _ = trans(x)
        for gi, g in enumerate(gens):
            y = act(x, g)
            if parent[y] == (x, gi):
                continue
            _, vinv = trans(y)
            s = mul(mul(u, g), vinv)
            if not is_one(s):
                out.append(s)
    return out


def all_subspace_orbits(spaces: Sequence, gens: Sequence, act: Callable) -> list[list]:
    """Partition a gens-invariant list of points into orbits, each sorted,
    ordered by least member."""
    remaining = set(spaces)
    orbits = []
    for s in sorted(spaces):
        if s not in remaining:
            continue
        orb, _ = orbit_with_transversal(s, gens, act)
        for y in orb:
            remaining.discard(y)
        orbits.append(sorted(orb))
    return orbits


def invariant_subspaces(plus: Sequence, minus: Sequence, p: int) -> list[tuple]:
    """All subspaces that split along the given eigenspace bases."""
    dp, dm = len(plus), len(minus)
    out = []
    for a in linalg.all_subspaces(dp, p):
        va = [linalg.mat_vec(plus, r, p) for r in a]
        for b in linalg.all_subspaces(dm, p):
            vb = [linalg.mat_vec(minus, r, p) for r in b]
            out.append(linalg.span_key(va + vb, p) if (va or vb) else ())
    return out


def eigenspace(m: Sequence[Sequence[int]], value: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {v : v m = value v}."""
    n = len(m)
    shifted = [tuple((m[i][j] - (value if i == j else 0)) % p for j in range(n)) for i in range(n)]
    # v * shifted = 0  <=>  shifted^T v^T = 0
    cols = [tuple(shifted[i][j] for i in range(n)) for j in range(n)]
    return linalg.nullspace(cols, n, p)
