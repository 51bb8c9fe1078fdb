"""Small dense linear algebra over the prime field F_p.

Vectors are tuples of ints in [0, p). Matrices are lists of row tuples.
Everything here is exact and intended for dimensions below ~12.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, ...]


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0])


def span_key(rows: Iterable[Sequence[int]], p: int) -> tuple[Vec, ...]:
    """Canonical hashable form of the row space (its RREF)."""
    return tuple(rref(rows, p)[0])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[Vec]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = (-row[f]) % p
        basis.append(tuple(x))
    return basis


def solve_in_span(basis: Sequence[Vec], v: Sequence[int], p: int) -> Vec | None:
    """Coefficients c with sum c_i basis_i == v, or None when v is outside the span."""
    k = len(basis)
    n = len(v)
    # columns are basis vectors; augmented system
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    red, pivots = rref(rows, p)
    if k in pivots:
        return None
    c = [0] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return tuple(c)


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vec:
    """Row-vector convention: returns v * m."""
    n = len(m[0]) if m else 0
    out = [0] * n
    for vi, row in zip(v, m):
        if vi:
            for j, a in enumerate(row):
                out[j] += vi * a
    return tuple(x % p for x in out)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> list[Vec]:
    return [mat_vec(b, row, p) for row in a]


def identity(n: int) -> list[Vec]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def image_of_span(space: Sequence[Vec], m: Sequence[Sequence[int]], p: int) -> tuple[Vec, ...]:
    return span_key([mat_vec(m, v, p) for v in space], p)


def sum_spaces(a: Sequence[Vec], b: Sequence[Vec], p: int) -> tuple[Vec, ...]:
    return span_key(list(a) + list(b), p)


def complement_basis(space: Sequence[Vec], n: int, p: int) -> list[Vec]:
    """Unit vectors extending a basis of `space` to F_p^n."""
    _, pivots = rref(space, p) if space else ([], [])
    return [tuple(1 if i == c else 0 for i in range(n)) for c in range(n) if c not in pivots]


def echelon_forms(n: int, k: int, p: int) -> Iterator[tuple[Vec, ...]]:
    """All k-dimensional subspaces of F_p^n, each as its RREF basis."""
    if k == 0:
        yield ()
        return
    for pivots in _combinations(n, k):
        free_slots = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free_slots.append((r, c))
        for vals in product(range(p), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def all_subspaces(n: int, p: int) -> Iterator[tuple[Vec, ...]]:
    for k in range(n + 1):
        yield from echelon_forms(n, k, p)


def _combinations(n: int, k: int):
    from itertools import combinations
    return combinations(range(n), k)


def count_full_rank(rows: int, cols: int, p: int) -> tuple[int, int]:
    """Exhaustive (full-rank count, total) over all rows x cols matrices."""
    total = 0
    good = 0
    target = min(rows, cols)
    for entries in product(range(p), repeat=rows * cols):
        m = [entries[i * cols:(i + 1) * cols] for i in range(rows)]
        total += 1
        if rank(m, p) == target:
            good += 1
    return good, total
