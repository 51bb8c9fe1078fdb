"""Consistency test words and re-presentation with exact definitions."""
from __future__ import annotations

from typing import Iterator

from .. import linalg
from .presentation import Elem, PcPresentation


def consistency_pairs(pres: PcPresentation, ngens: int | None = None) -> Iterator[tuple[Elem, Elem]]:
    """Yield pairs of elements that must coincide in a consistent presentation.

    Each pair is one overlap evaluated by two different collection orders.
    With `ngens`, only overlaps among the first ngens generators are formed
    (enough when the remaining generators are central of exponent p).
    """
    p = pres.p
    n = pres.n if ngens is None else ngens
    g = pres.gen
    mul = pres.mul
    for k in range(n):
        for j in range(k):
            for i in range(j):
                yield mul(mul(g(k), g(j)), g(i)), mul(g(k), mul(g(j), g(i)))
    for j in range(n):
        pm1 = g(j, p - 1)
        for i in range(j):
            # a_j^p a_i two ways
            yield mul(mul(pm1, g(j)), g(i)), mul(pm1, mul(g(j), g(i)))
            # a_j a_i^p two ways
            ip = g(i, p - 1)
            yield mul(mul(g(j), ip), g(i)), mul(g(j), mul(ip, g(i)))
        # a_j a_j^p = a_j^p a_j
        yield mul(mul(g(j), pm1), g(j)), mul(g(j), mul(pm1, g(j)))


def is_consistent(pres: PcPresentation) -> bool:
    return all(a == b for a, b in consistency_pairs(pres))


def standardize(pres: PcPresentation) -> tuple[PcPresentation, list[Elem]]:
    """Re-present `pres` on a pc sequence in which every deeper generator is
    exactly a commutator [b_j, b_i] or a power b_j^p of earlier ones.

    Returns (new presentation, values of the new generators in `pres`).
    Raises ValueError if the weights do not describe the lower p-central series.
    """
    p = pres.p
    c = pres.p_class
    layers = {w: pres.layer(w) for w in range(1, c + 1)}
    new_vals: list[Elem] = [pres.gen(k) for k in layers.get(1, [])]
    new_w: list[int] = [1] * len(new_vals)
    defs: dict[int, tuple] = {}
    for w in range(2, c + 1):
        cols = layers[w]
        chosen_rows: list[tuple[int, ...]] = []
        prev = [k for k in range(len(new_vals)) if new_w[k] == w - 1]
        firsts = [k for k in range(len(new_vals)) if new_w[k] == 1]
        cands = []
        for j in prev:
            cands.append((("p", j), pres.pow(new_vals[j], p)))
            for i in firsts:
                if i < j:
                    cands.append((("c", j, i), pres.commutator(new_vals[j], new_vals[i])))
        for key, val in cands:
            if any(val[k] for k in range(pres.n) if pres.weights[k] < w):
                raise ValueError("weights are not compatible with the lower p-central series")
            row = tuple(val[k] for k in cols)
            if linalg.rank(chosen_rows + [row], p) > len(chosen_rows):
                chosen_rows.append(row)
                defs[len(new_vals)] = key
                new_vals.append(val)
                new_w.append(w)
            if len(chosen_rows) == len(cols):
                break
        if len(chosen_rows) != len(cols):
            raise ValueError(f"layer {w} is not spanned by commutators and powers; weights invalid")
    new = _presentation_from_pcgs(pres, new_vals, new_w, defs)
    return new, new_vals


def decompose(pres: PcPresentation, pcgs: list[Elem], weights: list[int], x: Elem) -> Elem:
    """Exponents of x with respect to a weight-graded pc sequence of pres."""
    p = pres.p
    out = [0] * len(pcgs)
    rest = x
    for w in sorted(set(weights)):
        idx = [k for k in range(len(pcgs)) if weights[k] == w]
        cols = pres.layer(w)
        basis = [tuple(pcgs[k][c] for c in cols) for k in idx]
        target = tuple(rest[c] for c in cols)
        coef = linalg.solve_in_span(basis, target, p)
        if coef is None:
            raise ValueError("element outside span of layer")
        b = pres.identity
        for k, f in zip(idx, coef):
            if f:
                b = pres.mul(b, pres.pow(pcgs[k], f))
            out[k] = f
        rest = pres.mul(pres.inv(b), rest)
    if any(rest):
        raise ValueError("decomposition did not terminate at identity")
    return tuple(out)


def _presentation_from_pcgs(pres: PcPresentation, vals: list[Elem], weights: list[int],
                            defs: dict[int, tuple]) -> PcPresentation:
    m = len(vals)
    power = []
    comm = {}
    for j in range(m):
        power.append(decompose(pres, vals, weights, pres.pow(vals[j], pres.p)))
        for i in range(j):
            comm[(j, i)] = decompose(pres, vals, weights, pres.commutator(vals[j], vals[i]))
    return PcPresentation(pres.p, weights, power, comm, defs)
