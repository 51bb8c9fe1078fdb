"""Lower p-central quotients F_c of the free pro-p group and the sets X_c, Y_c.

F_1 is elementary abelian of rank g and F_{c+1} is the p-cover of F_c. The
GI-automorphism sigma sends every free generator to its inverse; since F_c is
relatively free this extends to an automorphism of order 2 at every class.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import autos
from .pc.homs import Homomorphism
from .pc.presentation import BoundExceeded, Elem, PcPresentation
from .pc.subgroups import Subgroup, frattini, subgroup_from_set
from .pcover import p_cover

ORDER_BOUND = 16          # exponent: build F_c only up to p**16
EXACT_SET_BOUND = 12      # exponent: enumerate X_c only when |Phi(F_c)| <= p**12


@dataclass
class FreeQuotient:
    p: int
    g: int
    c: int
    pres: PcPresentation
    sigma: Homomorphism
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def frattini(self) -> Subgroup:
        if "phi" not in self._cache:
            self._cache["phi"] = frattini(self.pres)
        return self._cache["phi"]

    @property
    def frattini_positions(self) -> list[int]:
        return [k for k in range(self.pres.n) if self.pres.weights[k] > 1]

    def frattini_elements(self) -> list[Elem]:
        n_phi = len(self.frattini_positions)
        if n_phi > EXACT_SET_BOUND:
            raise BoundExceeded(f"|Phi(F_c)| = {self.p}^{n_phi} exceeds the exact bound")
        return self.frattini.elements

    @property
    def x_set(self) -> list[Elem]:
        """X_c = {s in Phi(F_c) : sigma(s) = s^-1}, sorted."""
        if "x" not in self._cache:
            pres, s = self.pres, self.sigma
            self._cache["x"] = sorted(t for t in self.frattini_elements() if s(t) == pres.inv(t))
        return self._cache["x"]

    @property
    def y_subgroup(self) -> Subgroup:
        """Y(F_c, sigma): the fixed points of sigma."""
        if "y" not in self._cache:
            s = self.sigma
            fixed = [x for x in self.pres.elements(EXACT_SET_BOUND + self.g) if s(x) == x]
            self._cache["y"] = subgroup_from_set(self.pres, fixed)
        return self._cache["y"]

    def x_full_size(self) -> int:
        """|X(F_c, sigma)| by direct count over the whole group."""
        pres, s = self.pres, self.sigma
        return sum(1 for x in pres.elements(EXACT_SET_BOUND + self.g) if s(x) == pres.inv(x))

    def phi_map(self, t: Elem) -> Elem:
        """t -> t^-1 sigma(t), a map from Phi(F_c) onto X_c."""
        if not self.pres.in_frattini(t):
            raise ValueError("argument must lie in the Frattini subgroup")
        return self.pres.mul(self.pres.inv(t), self.sigma(t))

    def random_frattini(self, rng: np.random.Generator, k: int) -> list[Elem]:
        pos = self.frattini_positions
        vals = rng.integers(0, self.p, size=(k, len(pos)))
        out = []
        for row in vals:
            v = [0] * self.pres.n
            for i, e in zip(pos, row):
                v[i] = int(e)
            out.append(tuple(v))
        return out

    def sample_x_tuple(self, k: int, seed) -> tuple[Elem, ...]:
        """k independent uniform elements of X_c, deterministic in the seed."""
        rng = np.random.default_rng(seed)
        return tuple(self.phi_map(t) for t in self.random_frattini(rng, k))

    def to_dict(self) -> dict:
        return {
            "p": self.p, "g": self.g, "c": self.c,
            "order_exp": self.pres.n,
            "frattini_size": self.p ** len(self.frattini_positions),
            "x_size": len(self.x_set),
            "y_size": self.y_subgroup.order,
        }


def build_free_quotient(p: int, g: int, c: int, bound: int = ORDER_BOUND) -> FreeQuotient:
    if p % 2 == 0:
        raise ValueError("p must be odd")
    if c < 1 or g < 1:
        raise ValueError("need c >= 1 and g >= 1")
    pres = PcPresentation(p, [1] * g)
    for k in range(1, c):
        pres = p_cover(pres, verify=pres.n <= 8).cover
        if pres.n > bound:
            raise BoundExceeded(f"F_{k + 1} has order {p}^{pres.n}, beyond {p}^{bound}")
    sigma = autos.from_weight1(pres, [pres.inv(pres.gen(i)) for i in range(g)])
    if not autos.is_involution(sigma):
        raise AssertionError("generator inversion is not an involution")
    return FreeQuotient(p, g, c, pres, sigma)


def projection(fq_high: FreeQuotient, fq_low: FreeQuotient, x: Elem) -> Elem:
    """Image of x under the natural map F_{c+1} -> F_c (truncation)."""
    return tuple(x[:fq_low.pres.n])
