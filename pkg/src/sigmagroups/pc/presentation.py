"""Weighted power-commutator presentations of finite p-groups.

A presentation on generators a_0 .. a_{n-1} stores, for every generator, the
normal form of a_i^p and, for every pair j > i, the normal form of the
commutator [a_j, a_i] = a_j^-1 a_i^-1 a_j a_i. Elements are exponent tuples
(e_0, ..., e_{n-1}) with 0 <= e_k < p standing for a_0^e_0 ... a_{n-1}^e_{n-1}.

Generators are 0-indexed in code; the text format and reports are 1-indexed.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

Elem = tuple[int, ...]
Word = Sequence[tuple[int, int]]
RelKey = tuple  # ('p', i) or ('c', j, i)

DEFAULT_ENUMERATION_BOUND = 10  # exponent: p**10 elements

_CACHE_LIMIT = 3_000_000


class InconsistentPresentation(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class PcPresentation:
    """Immutable weighted pc presentation with a memoising collector."""

    __slots__ = ("p", "n", "weights", "power", "comm", "definitions", "tags",
                 "_conj", "_cache", "_hash")

    def __init__(self, p: int, weights: Sequence[int], power: Sequence[Elem] | None = None,
                 comm: dict[tuple[int, int], Elem] | None = None,
                 definitions: dict[int, RelKey] | None = None,
                 tags: dict[str, tuple[int, ...]] | None = None):
        n = len(weights)
        self.p = p
        self.n = n
        self.weights = tuple(weights)
        if any(self.weights[k] > self.weights[k + 1] for k in range(n - 1)):
            raise ValueError("weights must be non-decreasing")
        ident = (0,) * n
        pw = tuple(tuple(v) for v in power) if power is not None else (ident,) * n
        cm = {}
        for (j, i), v in (comm or {}).items():
            if not j > i:
                raise ValueError(f"commutator key ({j},{i}) needs j > i")
            v = tuple(v)
            if any(v):
                cm[(j, i)] = v
        for i, v in enumerate(pw):
            _check_nf(v, p, n, i)
        for (j, i), v in cm.items():
            _check_nf(v, p, n, j)
        self.power = pw
        self.comm = cm
        self.tags = dict(tags or {})
        self._cache: dict = {}
        self._hash = None
        self._conj = None
        self.definitions = dict(definitions) if definitions is not None else self._detect_definitions()

    # ----- basic data -----------------------------------------------------
    @property
    def identity(self) -> Elem:
        return (0,) * self.n

    def gen(self, i: int, e: int = 1) -> Elem:
        v = [0] * self.n
        v[i] = e % self.p
        return tuple(v)

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def d(self) -> int:
        """Minimal number of generators (the weight-1 generators)."""
        return sum(1 for w in self.weights if w == 1)

    @property
    def p_class(self) -> int:
        return max(self.weights) if self.n else 0

    def layer(self, w: int) -> list[int]:
        return [k for k in range(self.n) if self.weights[k] == w]

    def layer_dims(self) -> list[int]:
        return [len(self.layer(w)) for w in range(1, self.p_class + 1)]

    def commutator_rel(self, j: int, i: int) -> Elem:
        return self.comm.get((j, i), self.identity)

    def relation_keys(self) -> list[RelKey]:
        keys: list[RelKey] = []
        for j in range(self.n):
            keys.append(("p", j))
            for i in range(j):
                keys.append(("c", j, i))
        return keys

    def relation_rhs(self, key: RelKey) -> Elem:
        if key[0] == "p":
            return self.power[key[1]]
        return self.commutator_rel(key[1], key[2])

    def relation_lhs(self, key: RelKey, images: Sequence[Elem], target: "PcPresentation") -> Elem:
        """Evaluate the left side of a relation in `target` given generator images."""
        if key[0] == "p":
            return target.pow(images[key[1]], self.p)
        return target.commutator(images[key[1]], images[key[2]])

    def __eq__(self, other):
        return (isinstance(other, PcPresentation) and self.p == other.p
                and self.weights == other.weights and self.power == other.power
                and self.comm == other.comm)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.weights, self.power, tuple(sorted(self.comm.items()))))
        return self._hash

    def __repr__(self):
        return f"PcPresentation(p={self.p}, n={self.n}, class={self.p_class})"

    # ----- collection -----------------------------------------------------
    def _conj_table(self):
        # conj[j][i][e] = (a_j^{a_i})^e for j > i
        if self._conj is None:
            n = self.n
            self._conj = [[None] * n for _ in range(n)]
            # later pairs first: powers of a_j^{a_i} only need conjugation by a_m, m > i
            for i in reversed(range(n)):
                for j in range(i + 1, n):
                    base = list(self.commutator_rel(j, i))
                    base[j] = 1
                    base = tuple(base)
                    pows = [self.identity, base]
                    for _ in range(2, self.p):
                        pows.append(self.mul(pows[-1], base))
                    self._conj[j][i] = pows
        return self._conj

    def mul_gen(self, x: Elem, i: int) -> Elem:
        """x * a_i."""
        key = (x, i)
        r = self._cache.get(key)
        if r is not None:
            return r
        conj = self._conj_table()
        e = x[i] + 1
        acc = None
        if e == self.p:
            e = 0
            acc = self.power[i]
        for j in range(i + 1, self.n):
            f = x[j]
            if f:
                c = conj[j][i][f]
                acc = c if acc is None else self.mul(acc, c)
        if acc is None:
            r = x[:i] + (e,) + (0,) * (self.n - i - 1)
        else:
            r = x[:i] + (e,) + acc[i + 1:]
        if len(self._cache) > _CACHE_LIMIT:
            self._cache.clear()
        self._cache[key] = r
        return r

    def mul(self, x: Elem, y: Elem) -> Elem:
        for k, f in enumerate(y):
            for _ in range(f):
                x = self.mul_gen(x, k)
        return x

    def prod(self, elems: Iterable[Elem]) -> Elem:
        r = self.identity
        for e in elems:
            r = self.mul(r, e)
        return r

    def inv(self, x: Elem) -> Elem:
        r = x
        out = [0] * self.n
        for k in range(self.n):
            f = (-r[k]) % self.p
            out[k] = f
            for _ in range(f):
                r = self.mul_gen(r, k)
        return tuple(out)

    def pow(self, x: Elem, e: int) -> Elem:
        if e < 0:
            x = self.inv(x)
            e = -e
        result = self.identity
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def commutator(self, x: Elem, y: Elem) -> Elem:
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.inv(self.mul(y, x)), self.mul(x, y))

    def conjugate(self, x: Elem, y: Elem) -> Elem:
        """x^y = y^-1 x y."""
        return self.mul(self.inv(y), self.mul(x, y))

    def collect(self, word: Word) -> Elem:
        """Normal form of a word given as (generator index, exponent) pairs."""
        r = self.identity
        for g, e in word:
            if not 0 <= g < self.n:
                raise IndexError(f"generator index {g} out of range 0..{self.n - 1}")
            e %= self.p ** max(self.p_class, 1)
            for _ in range(e):
                r = self.mul_gen(r, g)
        return r

    def element_order(self, x: Elem) -> int:
        o = 1
        y = x
        while any(y):
            y = self.pow(y, self.p)
            o *= self.p
        return o

    # ----- enumeration ----------------------------------------------------
    def elements(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Elem]:
        if self.n > bound:
            raise BoundExceeded(f"group of order {self.p}^{self.n} exceeds enumeration bound {self.p}^{bound}")
        return product(range(self.p), repeat=self.n)

    # ----- structure helpers ----------------------------------------------
    def truncate(self, w: int) -> "PcPresentation":
        """Quotient by P_w(G), i.e. drop generators of weight > w."""
        keep = [k for k in range(self.n) if self.weights[k] <= w]
        m = len(keep)
        if m == self.n:
            return self
        power = [self.power[k][:m] for k in keep]
        comm = {(j, i): v[:m] for (j, i), v in self.comm.items() if j < m}
        defs = {k: key for k, key in self.definitions.items() if k < m}
        return PcPresentation(self.p, self.weights[:m], power, comm, defs)

    def in_frattini(self, x: Elem) -> bool:
        return all(x[k] == 0 for k in range(self.n) if self.weights[k] == 1)

    def _detect_definitions(self) -> dict[int, RelKey]:
        defs: dict[int, RelKey] = {}
        for key in self.relation_keys():
            rhs = self.relation_rhs(key)
            nz = [k for k, v in enumerate(rhs) if v]
            if not nz:
                continue
            k = nz[-1]
            if rhs[k] != 1 or k in defs or self.weights[k] == 1:
                continue
            if max(key[1:]) >= k:
                continue
            defs[k] = key
        return defs

    def has_definitions(self) -> bool:
        return all(k in self.definitions for k in range(self.n) if self.weights[k] > 1)

    def generator_images(self, images: Sequence[Elem], target: "PcPresentation") -> list[Elem]:
        """Images of all pc generators from images of the weight-1 generators.

        Uses the definitions: a_k = u^-1 * lhs where the defining relation reads
        lhs = u * a_k.
        """
        if not self.has_definitions():
            raise ValueError("presentation lacks definitions; call standardize() first")
        d = self.d
        if len(images) != d:
            raise ValueError(f"expected {d} images, got {len(images)}")
        out: list[Elem] = list(images) + [None] * (self.n - d)
        for k in range(d, self.n):
            key = self.definitions[k]
            lhs = self.relation_lhs(key, out, target)
            rhs = self.relation_rhs(key)
            u = rhs[:k] + (0,) * (self.n - k)
            u_img = target.identity
            for m in range(k):
                if u[m]:
                    u_img = target.mul(u_img, target.pow(out[m], u[m]))
            out[k] = target.mul(target.inv(u_img), lhs)
        return out


def _check_nf(v: Elem, p: int, n: int, after: int) -> None:
    if len(v) != n:
        raise ValueError(f"relation right side {v} has wrong length (expected {n})")
    if any(not 0 <= e < p for e in v):
        raise ValueError(f"relation right side {v} is not in normal form")
    if any(v[k] for k in range(after + 1)):
        raise ValueError(f"relation right side {v} must only involve generators after index {after}")


def evaluate_elem(images: Sequence[Elem], x: Elem, target: PcPresentation) -> Elem:
    """Image of a normal-form element under a map given on all pc generators."""
    r = target.identity
    for k, e in enumerate(x):
        if e:
            r = target.mul(r, images[k] if e == 1 else target.pow(images[k], e))
    return r
