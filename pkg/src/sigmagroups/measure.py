"""Exact measures of Schur+1 sigma-ancestor groups and their oracles.

Formulas (eta_j = prod_{k<=j} (1 - p^-k)):

    Meas_c(G)    = y / (|Aut_sigma| |G|) * p^(g(g+1)) * eta_g eta_{g+1} / eta_{g+1-h}
    Meas(G)      = same with r in place of h, and 0 unless G is a Schur+1 sigma-group
    Meas_c^ab(A) = 1 / (|Aut A| |A|) * p^(g(g+1)) * eta_g eta_{g+1} / eta_{g+1-u}
    Meas^ab(A)   = 1 / (|Aut A| |A|) * p^(g(g+1)) * eta_g eta_{g+1} / (1 - 1/p)

The oracles count relator tuples directly: every (g+1)-tuple in X_c is
pushed to the quotient F_c / <tuple>, exhaustively or by seeded sampling.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg
from .pc.abelian import AbelianType, automorphism_group_order
from .pc.homs import isomorphic
from .pc.presentation import BoundExceeded, PcPresentation
from .pc.subgroups import Subgroup, normal_closure, quotient

EXHAUSTIVE_BOUND = 10 ** 7


def eta(j: int, p: int) -> Fraction:
    out = Fraction(1)
    for k in range(1, j + 1):
        out *= 1 - Fraction(1, p ** k)
    return out


def meas_c_formula(y: int, aut_sigma: int, order: int, g: int, h: int, p: int) -> Fraction:
    """Meas_c of a Schur+1 sigma-ancestor of class c; 0 when h > g + 1."""
    if h < 0:
        raise ValueError("h must be non-negative")
    if h > g + 1:
        return Fraction(0)
    return (Fraction(y, aut_sigma * order) * p ** (g * (g + 1))
            * eta(g, p) * eta(g + 1, p) / eta(g + 1 - h, p))


def meas_formula(y: int, aut_sigma: int, order: int, g: int, r: int, p: int,
                 schur_plus1: bool = True) -> Fraction:
    """Stable measure; 0 unless the group is a Schur+1 sigma-group."""
    if not schur_plus1 or r > g + 1:
        return Fraction(0)
    return meas_c_formula(y, aut_sigma, order, g, r, p)


def meas_ab_formula(a: AbelianType, at_class: int | None = None) -> Fraction:
    """Abelian measure at class `at_class` (default: the stable value).

    At the group's own class the u-form applies; at any larger class the
    stable form does.
    """
    p, g = a.p, a.rank
    base = Fraction(p ** (g * (g + 1)), automorphism_group_order(a) * a.order) * eta(g, p) * eta(g + 1, p)
    if at_class is None or at_class > a.p_class:
        return base / (1 - Fraction(1, p))
    if at_class < a.p_class:
        return Fraction(0)
    return base / eta(g + 1 - a.u, p)


# ---- abelian exhaustive oracle ------------------------------------------------

def abelian_quotient_counts(p: int, g: int, c: int, k: int | None = None) -> dict[AbelianType, Fraction]:
    """Distribution of (Z/p^c)^g / <v_1..v_k> over uniform k-tuples from the
    Frattini subgroup p (Z/p^c)^g (k defaults to g + 1).

    Only g = 2 is supported; invariant factors come from gcds of entries and
    of 2 x 2 minors of the relation matrix together with p^c I.
    """
    if g != 2:
        raise ValueError("exhaustive abelian oracle implemented for g = 2")
    if k is None:
        k = g + 1
    mod = p ** c
    phi = [(p * a, p * b) for a in range(p ** (c - 1)) for b in range(p ** (c - 1))]
    if len(phi) ** k > EXHAUSTIVE_BOUND:
        raise BoundExceeded("too many tuples for the exhaustive abelian oracle")
    counts: Counter = Counter()
    for tup in product(phi, repeat=k):
        rows = list(tup) + [(mod, 0), (0, mod)]
        d1 = math.gcd(*[x for r in rows for x in r])
        minors = [rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
                  for i in range(len(rows)) for j in range(i + 1, len(rows))]
        d12 = math.gcd(*minors)
        counts[(d1, d12 // d1)] += 1
    total = len(phi) ** k
    out = {}
    for (d1, d2), n in counts.items():
        out[AbelianType.from_orders([d1, d2], p)] = Fraction(n, total)
    return out


def full_rank_fraction(g: int, p: int) -> Fraction:
    good, total = linalg.count_full_rank(g + 1, g, p)
    return Fraction(good, total)


def full_rank_formula(g: int, p: int) -> Fraction:
    out = Fraction(1)
    for k in range(2, g + 2):
        out *= 1 - Fraction(1, p ** k)
    return out


# ---- exhaustive non-abelian oracle --------------------------------------------

@dataclass
class OracleClass:
    pres: PcPresentation
    measure: Fraction
    kernels: int = 1


def quotient_by_tuple(F: PcPresentation, tup: Sequence) -> tuple[Subgroup, PcPresentation]:
    n = normal_closure(F, [t for t in tup if any(t)])
    q, _ = quotient(F, n)
    return n, q


def brute_force_meas_c(fq, k: int | None = None, bound: int = EXHAUSTIVE_BOUND) -> list[OracleClass]:
    """Exact frequencies of the quotients F_c / <v> over all v in X_c^(g+1),
    folded into isomorphism classes; sorted by measure, largest first."""
    from .pc.consistency import standardize
    if k is None:
        k = fq.g + 1
    xs = fq.x_set
    total = len(xs) ** k
    if total > bound:
        raise BoundExceeded(f"{total} tuples exceed the exhaustive bound {bound}")
    F = fq.pres
    by_kernel: Counter = Counter()
    kernel_of: dict = {}
    for tup in product(xs, repeat=k):
        n = normal_closure(F, [t for t in tup if any(t)])
        by_kernel[n.key] += 1
        kernel_of.setdefault(n.key, n)
    classes: list[OracleClass] = []
    for key, cnt in sorted(by_kernel.items()):
        q, _ = quotient(F, kernel_of[key])
        q, _ = standardize(q)
        for cl in classes:
            if isomorphic(cl.pres, q):
                cl.measure += Fraction(cnt, total)
                cl.kernels += 1
                break
        else:
            classes.append(OracleClass(q, Fraction(cnt, total)))
    classes.sort(key=lambda c: (-c.measure, c.pres.n))
    return classes


# ---- recursion ---------------------------------------------------------------

def recursion_check(meas_c: Fraction, meas_next: Fraction, children_next: Sequence[Fraction]) -> bool:
    """Meas_c(G) = Meas_{c+1}(G) + sum of Meas_{c+1} over ancestor children."""
    return meas_c == meas_next + sum(children_next, Fraction(0))


# ---- Monte-Carlo oracle ------------------------------------------------------

@dataclass
class MonteCarloResult:
    n: int
    counts: Counter = field(default_factory=Counter)

    def estimates(self) -> dict:
        out = {}
        for fp, cnt in sorted(self.counts.items()):
            est = cnt / self.n
            out[fp] = (est, math.sqrt(est * (1 - est) / self.n))
        return out


def binomial_stderr(prob: float, n: int) -> float:
    return math.sqrt(prob * (1 - prob) / n)


def monte_carlo_counts(fq, n_samples: int, seed: int, k: int | None = None,
                       threads: int = 1) -> MonteCarloResult:
    """Sample relator tuples and count quotient fingerprints.

    Worker i draws samples from its own stream seeded by (seed, i); results
    are identical for any number of threads.
    """
    from .fingerprint import QuotientFingerprinter
    if k is None:
        k = fq.g + 1
    res = MonteCarloResult(n_samples)
    if n_samples == 0:
        return res
    chunks = _chunks(n_samples)
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_mc_chunk, [(fq.p, fq.g, fq.c, seed, i, m, k) for i, m in chunks]))
    else:
        fpr = QuotientFingerprinter(fq)
        parts = [_mc_run(fq, fpr, seed, i, m, k) for i, m in chunks]
    for part in parts:
        res.counts.update(part)
    return res


CHUNK = 5000


def _chunks(n: int) -> list[tuple[int, int]]:
    out = []
    i = 0
    while n > 0:
        m = min(CHUNK, n)
        out.append((i, m))
        n -= m
        i += 1
    return out


def _mc_run(fq, fpr, seed: int, index: int, m: int, k: int) -> Counter:
    rng = np.random.default_rng([seed, index])
    cnt: Counter = Counter()
    ts = fq.random_frattini(rng, m * k)
    for j in range(m):
        tup = [fq.phi_map(t) for t in ts[j * k:(j + 1) * k]]
        cnt[fpr.fingerprint_of_tuple(tup)] += 1
    return cnt


_WORKER_CACHE: dict = {}


def _mc_chunk(args) -> Counter:
    from .fingerprint import QuotientFingerprinter
    from .freetower import build_free_quotient
    p, g, c, seed, index, m, k = args
    key = (p, g, c)
    if key not in _WORKER_CACHE:
        fq = build_free_quotient(p, g, c)
        _WORKER_CACHE[key] = (fq, QuotientFingerprinter(fq))
    fq, fpr = _WORKER_CACHE[key]
    return _mc_run(fq, fpr, seed, index, m, k)
