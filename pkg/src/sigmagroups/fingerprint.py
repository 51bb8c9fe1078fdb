"""Isomorphism-invariant fingerprints: (log order, class, IPAD, log y).

`QuotientFingerprinter` evaluates the same fingerprint for F_c / N directly
inside F_c, without building a presentation of the quotient. It caches by
the canonical key of N.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

from . import autos, linalg
from .ipad import Ipad, ipad_of
from .pc.homs import Homomorphism
from .pc.presentation import Elem, PcPresentation
from .pc.subgroups import Subgroup, maximal_subgroups, normal_closure
from .sigma import y_exponent


class Fingerprint(NamedTuple):
    order_exp: int
    p_class: int
    ipad: str
    y_exp: int

    def __str__(self) -> str:
        return f"3^{self.order_exp}|c{self.p_class}|{self.ipad}|y{self.y_exp}"

    def label(self, p: int) -> str:
        return f"{p}^{self.order_exp}|c{self.p_class}|{self.ipad}|y={p}^{self.y_exp}"


def fingerprint_of(pres: PcPresentation, sigma: Homomorphism, ipad: Ipad | None = None) -> Fingerprint:
    if ipad is None:
        ipad = ipad_of(pres)
    return Fingerprint(pres.n, pres.p_class, str(ipad), y_exponent(sigma))


class QuotientFingerprinter:
    def __init__(self, fq):
        self.fq = fq
        F = fq.pres
        self.F = F
        p = F.p
        self.maxes = maximal_subgroups(F)
        self.layers = [F.layer(w) for w in range(1, F.p_class + 1)]
        self.layer_of = {k: w for w in range(1, F.p_class + 1) for k in F.layer(w)}
        self.s_mats = [autos.layer_matrix(fq.sigma, w) for w in range(1, F.p_class + 1)]
        self.plus_dims = [len(autos.eigenspace(m, 1, p)) for m in self.s_mats]
        self._cache: dict = {}

    def fingerprint_of_tuple(self, tup: Sequence[Elem]) -> Fingerprint:
        n = normal_closure(self.F, [t for t in tup if any(t)])
        fp = self._cache.get(n.key)
        if fp is None:
            fp = self.fingerprint_of_kernel(n)
            self._cache[n.key] = fp
        return fp

    def fingerprint_of_kernel(self, n: Subgroup) -> Fingerprint:
        F = self.F
        p = F.p
        # class: largest weight of a generator surviving in the quotient
        lead = set(n.leading_positions)
        c = max((F.weights[k] for k in range(F.n) if k not in lead), default=0)
        ipad = ipad_of(F, self.maxes, n)
        y = 0
        for w, cols in enumerate(self.layers, start=1):
            basis = [tuple(t[k] for k in cols) for t in n.pcgs if self.layer_of[_lead(t)] == w]
            s = self.s_mats[w - 1]
            fixed = [tuple((a + b) % p for a, b in zip(v, linalg.mat_vec(s, v, p))) for v in basis]
            y += self.plus_dims[w - 1] - linalg.rank(fixed, p) if fixed else self.plus_dims[w - 1]
        return Fingerprint(F.n - n.log_order, c, str(ipad), y)


def _lead(x: Elem) -> int:
    for k, e in enumerate(x):
        if e:
            return k
    raise ValueError("identity has no leading position")
