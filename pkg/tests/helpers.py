import math

from sigmagroups.pc.abelian import AbelianType
from sigmagroups.pc.presentation import PcPresentation


def elementary(p, g):
    return PcPresentation(p, [1] * g)


def cyclic(p, e):
    """C_{p^e} on a_1..a_e with a_k^p = a_{k+1}."""
    power = [tuple(1 if j == k + 1 else 0 for j in range(e)) for k in range(e)]
    return PcPresentation(p, list(range(1, e + 1)), power)


def abelian(a: AbelianType | str) -> PcPresentation:
    """Abelian group of the given type with its weight-1 generators first."""
    if isinstance(a, str):
        a = AbelianType.parse(a)
    exps = [round(math.log(o, a.p)) for o in a.orders]
    gens = [(f, level) for level in range(max(exps)) for f, e in enumerate(exps) if level < e]
    index = {fl: k for k, fl in enumerate(gens)}
    n = len(gens)
    power = []
    for f, level in gens:
        nxt = index.get((f, level + 1))
        power.append(tuple(1 if k == nxt else 0 for k in range(n)))
    return PcPresentation(a.p, [lv + 1 for _, lv in gens], power)
