"""Subgroups of pc groups, held as reduced induced generating sequences.

A subgroup is stored through one generator per leading position (the first
nonzero exponent), normalised to leading exponent 1 and reduced against the
other leading positions. That form is unique per subgroup, so it doubles as a
canonical key; `elements` materialises the explicit sorted set when needed.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .. import linalg
from .presentation import BoundExceeded, DEFAULT_ENUMERATION_BOUND, Elem, PcPresentation


def _leading(x: Elem) -> int:
    for k, e in enumerate(x):
        if e:
            return k
    return -1


class Subgroup:
    def __init__(self, pres: PcPresentation, generators: Iterable[Elem] = ()):
        self.pres = pres
        self.table: dict[int, Elem] = {}
        self.generators: list[Elem] = []
        self.add(generators)

    # ---- construction ----------------------------------------------------
    def sift(self, x: Elem) -> Elem:
        pres = self.pres
        p = pres.p
        while True:
            k = _leading(x)
            if k < 0:
                return x
            t = self.table.get(k)
            if t is None:
                return x
            x = pres.mul(x, pres.pow(t, p - x[k]))

    def add(self, gens: Iterable[Elem]) -> bool:
        """Enlarge by `gens`; returns True if the subgroup grew."""
        pres = self.pres
        p = pres.p
        queue = list(gens)
        self.generators.extend(queue)
        grew = False
        while queue:
            y = self.sift(queue.pop())
            k = _leading(y)
            if k < 0:
                continue
            if y[k] != 1:
                y = pres.pow(y, pow(y[k], -1, p))
            self.table[k] = y
            grew = True
            queue.append(pres.pow(y, p))
            for t in list(self.table.values()):
                if t is not y:
                    queue.append(pres.commutator(y, t))
        if grew:
            self._reduce()
            self.__dict__.pop("key", None)
            self.__dict__.pop("elements", None)
        return grew

    def _reduce(self) -> None:
        pres = self.pres
        p = pres.p
        lead = sorted(self.table)
        # later rows first, so each row is reduced against already reduced ones
        for k in reversed(lead):
            t = self.table[k]
            for m in lead:
                if m > k and t[m]:
                    t = pres.mul(t, pres.pow(self.table[m], p - t[m]))
            self.table[k] = t

    # ---- queries ----------------------------------------------------------
    @property
    def pcgs(self) -> list[Elem]:
        return [self.table[k] for k in sorted(self.table)]

    @property
    def leading_positions(self) -> list[int]:
        return sorted(self.table)

    @property
    def log_order(self) -> int:
        return len(self.table)

    @property
    def order(self) -> int:
        return self.pres.p ** len(self.table)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: Elem) -> bool:
        return not any(self.sift(tuple(x)))

    @cached_property
    def key(self) -> tuple[Elem, ...]:
        return tuple(self.pcgs)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.pres is other.pres and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def reduce(self, x: Elem) -> Elem:
        """Canonical representative of the coset x*self (zero at leading positions)."""
        pres = self.pres
        p = pres.p
        for k in sorted(self.table):
            if x[k]:
                x = pres.mul(x, pres.pow(self.table[k], p - x[k]))
        return x

    @cached_property
    def elements(self) -> list[Elem]:
        if self.log_order > DEFAULT_ENUMERATION_BOUND + 2:
            raise BoundExceeded("subgroup too large to enumerate")
        pres = self.pres
        out = []
        gens = self.pcgs
        for exps in product(range(pres.p), repeat=len(gens)):
            x = pres.identity
            for g, e in zip(gens, exps):
                if e:
                    x = pres.mul(x, pres.pow(g, e))
            out.append(x)
        out.sort()
        return out

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(t in other for t in self.pcgs)

    def copy(self) -> "Subgroup":
        s = Subgroup.__new__(Subgroup)
        s.pres = self.pres
        s.table = dict(self.table)
        s.generators = list(self.generators)
        return s

    def __repr__(self):
        return f"Subgroup(order={self.pres.p}^{self.log_order})"


def whole_group(pres: PcPresentation) -> Subgroup:
    s = Subgroup(pres)
    for k in range(pres.n):
        s.table[k] = pres.gen(k)
    s.generators = [pres.gen(k) for k in range(pres.d)]
    return s


def subgroup_from_set(pres: PcPresentation, elems: Iterable[Elem]) -> Subgroup:
    """Subgroup generated by an explicit set; raises if the set is not closed."""
    elems = sorted(set(map(tuple, elems)))
    s = Subgroup(pres, elems)
    if s.order != len(elems):
        raise ValueError("set is not closed under multiplication")
    return s


def normal_closure(pres: PcPresentation, gens: Iterable[Elem],
                   conjugators: Sequence[Elem] | None = None) -> Subgroup:
    """Smallest subgroup containing `gens` and closed under conjugation by `conjugators`
    (default: the pc generators of the whole group)."""
    if conjugators is None:
        conjugators = [pres.gen(k) for k in range(pres.n)]
    n = Subgroup(pres, gens)
    changed = True
    while changed:
        changed = False
        for t in list(n.table.values()):
            for g in conjugators:
                c = pres.commutator(t, g)
                if c not in n:
                    n.add([c])
                    changed = True
    return n


def derived_subgroup(h: Subgroup) -> Subgroup:
    pres = h.pres
    gens = h.pcgs
    comms = [pres.commutator(x, y) for i, x in enumerate(gens) for y in gens[:i]]
    return normal_closure(pres, comms, gens)


def frattini(pres: PcPresentation) -> Subgroup:
    s = Subgroup(pres)
    for k in range(pres.n):
        if pres.weights[k] > 1:
            s.table[k] = pres.gen(k)
    return s


def lower_central_term(pres: PcPresentation, w: int) -> Subgroup:
    """P_w(G): span of generators of weight > w."""
    s = Subgroup(pres)
    for k in range(pres.n):
        if pres.weights[k] > w:
            s.table[k] = pres.gen(k)
    return s


def maximal_subgroups(pres: PcPresentation) -> list[Subgroup]:
    """All index-p subgroups, as preimages of hyperplanes of G/Phi(G)."""
    d = pres.d
    p = pres.p
    deep = [pres.gen(k) for k in range(d, pres.n)]
    out = []
    for hyper in linalg.echelon_forms(d, d - 1, p):
        lifts = []
        for v in hyper:
            x = pres.identity
            for k, e in enumerate(v):
                if e:
                    x = pres.mul(x, pres.gen(k, e))
            lifts.append(x)
        out.append(Subgroup(pres, lifts + deep))
    out.sort(key=lambda s: s.key)
    return out


def quotient(pres: PcPresentation, n: Subgroup) -> tuple[PcPresentation, list[int]]:
    """Presentation of G/N on the non-leading generators of N.

    Returns the quotient (not yet standardised) and the kept generator indices.
    """
    lead = set(n.leading_positions)
    keep = [k for k in range(pres.n) if k not in lead]
    pos = {k: i for i, k in enumerate(keep)}

    def proj(x: Elem) -> Elem:
        r = n.reduce(x)
        return tuple(r[k] for k in keep)

    power = [proj(pres.power[k]) for k in keep]
    comm = {}
    for (j, i), v in pres.comm.items():
        if j in pos and i in pos:
            comm[(pos[j], pos[i])] = proj(v)
    weights = [pres.weights[k] for k in keep]
    return PcPresentation(pres.p, weights, power, comm), keep


def lower_pcentral_series(pres: PcPresentation, generators: Sequence[Elem] | None = None) -> list[Subgroup]:
    """[P_0, P_1, ..., P_k = 1] computed from subgroups alone (weights unused).

    `generators` should generate the group; defaults to the weight-1 generators.
    """
    if generators is None:
        generators = [pres.gen(k) for k in range(pres.d)]
    series = [whole_group(pres)]
    while series[-1].log_order:
        cur = series[-1].pcgs
        new = [pres.pow(x, pres.p) for x in cur]
        new += [pres.commutator(x, a) for x in cur for a in generators]
        series.append(normal_closure(pres, [y for y in new if any(y)]))
    return series
