"""IPADs: the abelianization of a group with those of its index-p subgroups.

Order on IPADs: a <= b when a's top is a quotient type of b's top and the
layers can be matched one-to-one with every entry of a a quotient type of
its partner in b. A child's maximal subgroups map onto its parent's, so the
IPAD can only grow along a tree edge.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .pc.abelian import AbelianType, abelian_invariants
from .pc.presentation import PcPresentation
from .pc.subgroups import Subgroup, maximal_subgroups


@dataclass(frozen=True, order=True)
class Ipad:
    top: AbelianType
    layer: tuple[AbelianType, ...]

    def __post_init__(self):
        object.__setattr__(self, "layer", tuple(sorted(self.layer)))

    @property
    def p(self) -> int:
        return self.top.p

    def __str__(self) -> str:
        counts = Counter(self.layer)
        parts = []
        for t in sorted(counts):
            parts.append(str(t) if counts[t] == 1 else f"{t}^{counts[t]}")
        return f"[{self.top}; {' '.join(parts)}]"

    def __repr__(self) -> str:
        return f"Ipad({self})"

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "Ipad":
        m = re.fullmatch(r"\s*\[\s*(\[[^\]]*\])\s*;\s*(.*?)\s*\]\s*", text)
        if not m:
            raise ValueError(f"malformed IPAD {text!r}")
        top = AbelianType.parse(m.group(1), p)
        layer = []
        for tok in re.findall(r"\[[^\]]*\](?:\^\d+)?", m.group(2)):
            if "^" in tok.rsplit("]", 1)[1]:
                body, mult = tok.rsplit("^", 1)
            else:
                body, mult = tok, "1"
            layer.extend([AbelianType.parse(body, top.p)] * int(mult))
        rest = re.sub(r"\[[^\]]*\](?:\^\d+)?", "", m.group(2)).strip()
        if rest or not layer:
            raise ValueError(f"malformed IPAD layer in {text!r}")
        return cls(top, tuple(layer))

    def layer_size_ok(self, g: int) -> bool:
        p = self.p
        return len(self.layer) == (p ** g - 1) // (p - 1)


def ipad_of(pres: PcPresentation, maxes: list[Subgroup] | None = None,
            modulo: Subgroup | None = None) -> Ipad:
    """IPAD of pres (or of pres/modulo, with modulo inside the Frattini subgroup)."""
    if maxes is None:
        maxes = maximal_subgroups(pres)
    top = abelian_invariants(pres, None, modulo)
    return Ipad(top, tuple(abelian_invariants(pres, m, modulo) for m in maxes))


def ipad_le(a: Ipad, b: Ipad) -> bool:
    if len(a.layer) != len(b.layer) or a.p != b.p:
        raise ValueError("IPADs belong to different (p, g)")
    if not a.top.is_quotient_of(b.top):
        return False
    cost = np.array([[0 if x.is_quotient_of(y) else 1 for y in b.layer] for x in a.layer])
    rows, cols = linear_sum_assignment(cost)
    return int(cost[rows, cols].sum()) == 0


def stable_branch(parent: PcPresentation | Ipad, child: PcPresentation | Ipad) -> bool:
    a = parent if isinstance(parent, Ipad) else ipad_of(parent)
    b = child if isinstance(child, Ipad) else ipad_of(child)
    return a == b
