"""Abelian invariants and finite abelian p-group bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .presentation import PcPresentation
from .subgroups import Subgroup, derived_subgroup, whole_group


@dataclass(frozen=True, order=True)
class AbelianType:
    """Multiset of cyclic factor orders p^e, kept as ascending exponents."""

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 1 for e in self.exponents):
            raise ValueError("cyclic factor exponents must be >= 1")
        object.__setattr__(self, "exponents", tuple(sorted(self.exponents)))

    @classmethod
    def from_orders(cls, orders: Sequence[int], p: int | None = None) -> "AbelianType":
        orders = [o for o in orders if o != 1]
        if p is None:
            if not orders:
                raise ValueError("need p for the trivial group")
            p = _prime_of(orders[0])
        exps = []
        for o in orders:
            e = 0
            while o % p == 0:
                o //= p
                e += 1
            if o != 1:
                raise ValueError(f"{o} is not a power of {p}")
            exps.append(e)
        return cls(p, tuple(exps))

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "AbelianType":
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"malformed abelian type {text!r}")
        body = text[1:-1].strip()
        orders = [int(t) for t in body.split(",")] if body else []
        return cls.from_orders(orders, p)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.p ** e for e in self.exponents)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def p_class(self) -> int:
        return max(self.exponents, default=0)

    @property
    def u(self) -> int:
        """Number of cyclic factors of order strictly below p^class."""
        c = self.p_class
        return sum(1 for e in self.exponents if e < c)

    @property
    def log_order(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.p ** self.log_order

    def is_quotient_of(self, other: "AbelianType") -> bool:
        """True when self is a quotient (equivalently a subgroup) of other."""
        a = sorted(self.exponents, reverse=True)
        b = sorted(other.exponents, reverse=True)
        if len(a) > len(b):
            return False
        return all(x <= y for x, y in zip(a, b))

    def __str__(self) -> str:
        return "[" + ",".join(str(o) for o in self.orders) + "]"

    def __repr__(self) -> str:
        return f"AbelianType({self})"


def _prime_of(n: int) -> int:
    f = 2
    while n % f:
        f += 1
    return f


def automorphism_group_order(a: AbelianType) -> int:
    """|Aut| of a finite abelian p-group (Hillar and Rhea's closed form)."""
    p = a.p
    e = list(a.exponents)
    n = len(e)
    dk = [max(l for l in range(n) if e[l] == e[k]) + 1 for k in range(n)]
    ck = [min(l for l in range(n) if e[l] == e[k]) + 1 for k in range(n)]
    out = 1
    for k in range(n):
        out *= p ** dk[k] - p ** k
    for j in range(n):
        out *= (p ** e[j]) ** (n - dk[j])
    for i in range(n):
        out *= (p ** (e[i] - 1)) ** (n - ck[i] + 1)
    return out


def abelian_invariants(pres: PcPresentation, h: Subgroup | None = None,
                       modulo: Subgroup | None = None) -> AbelianType:
    """Abelian type of H/[H,H] (H defaults to the whole group).

    With `modulo` = N (normal in G, inside H) it is the abelianization of the
    image of H in G/N, namely H / N[H,H]. Reads the order profile
    |H / [H,H] H^(p^k)| for k = 1, 2, ...
    """
    if h is None:
        h = whole_group(pres)
    p = pres.p
    der = derived_subgroup(h)
    if modulo is not None:
        der = der.copy()
        der.add(modulo.pcgs)
    gens = h.pcgs
    base = der.log_order
    sizes = [h.log_order - base]  # log |A^(p^k)|, k = 0
    powers = list(gens)
    while sizes[-1] > 0:
        powers = [pres.pow(g, p) for g in powers]
        s = der.copy()
        s.add(powers)
        sizes.append(s.log_order - base)
    ranks = [sizes[k] - sizes[k + 1] for k in range(len(sizes) - 1)]
    exps = []
    for k, r in enumerate(ranks):
        nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
        exps.extend([k + 1] * (r - nxt))
    return AbelianType(p, tuple(exps))


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Invariant factors (nonzero diagonal of the Smith form) of an integer matrix."""
    m = [list(r) for r in rows if any(r)]
    out = []
    col0 = 0
    while m and col0 < ncols:
        # find smallest nonzero entry
        best = None
        for i, r in enumerate(m):
            for j in range(col0, ncols):
                if r[j] and (best is None or abs(r[j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[0], m[i] = m[i], m[0]
        for r in m:
            r[col0], r[j] = r[j], r[col0]
        piv = m[0][col0]
        done = True
        for r in m[1:]:
            q = r[col0] // piv
            if q:
                for c in range(col0, ncols):
                    r[c] -= q * m[0][c]
            if r[col0]:
                done = False
        for c in range(col0 + 1, ncols):
            q = m[0][c] // piv
            if q:
                for r in m:
                    r[c] -= q * r[col0]
            if m[0][c]:
                done = False
        if not done:
            continue
        if any(r[c] % piv for r in m[1:] for c in range(col0 + 1, ncols)):
            # push a non-divisible entry into the pivot row
            for r in m[1:]:
                if any(r[c] % piv for c in range(col0 + 1, ncols)):
                    for c in range(col0, ncols):
                        m[0][c] += r[c]
                    break
            continue
        out.append(abs(piv))
        m = [r for r in m[1:] if any(r[col0 + 1:])]
        col0 += 1
    return out


def quotient_type(relations: Sequence[Sequence[int]], ngens: int, p: int) -> AbelianType:
    """Abelian type of Z^ngens / <relations>, which must be a finite p-group."""
    inv = smith_invariants(relations, ngens)
    if len(inv) < ngens:
        raise ValueError("quotient is infinite")
    return AbelianType.from_orders([d for d in inv if d != 1], p)


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
