"""Plain-text pc presentation format.

    3 5
    w 1 1
    w 2 1
    w 3 2
    ...
    p 1 : g4^1
    c 2 1 : g3^1

Generators are 1-indexed in the file. Omitted relations are trivial.
Lines starting with '#' are comments.
"""
from __future__ import annotations

import re

from .presentation import PcPresentation

_FACTOR = re.compile(r"^g(\d+)\^(-?\d+)$")


class PresentationSyntaxError(ValueError):
    pass


def _parse_word(text: str, n: int, p: int, lineno: int) -> tuple[int, ...]:
    v = [0] * n
    last = -1
    for tok in text.split():
        m = _FACTOR.match(tok)
        if not m:
            raise PresentationSyntaxError(f"line {lineno}: bad factor {tok!r}")
        k, e = int(m.group(1)) - 1, int(m.group(2))
        if not 0 <= k < n:
            raise PresentationSyntaxError(f"line {lineno}: generator g{k + 1} out of range")
        if k <= last:
            raise PresentationSyntaxError(f"line {lineno}: factors must be in increasing generator order")
        if not 0 <= e < p:
            raise PresentationSyntaxError(f"line {lineno}: exponent {e} not in [0, {p})")
        v[k] = e
        last = k
    return tuple(v)


def parse_presentation(text: str) -> PcPresentation:
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise PresentationSyntaxError("empty presentation")
    head = lines[0][1].split()
    if len(head) != 2:
        raise PresentationSyntaxError("first line must be 'p n'")
    p, n = int(head[0]), int(head[1])
    weights = [None] * n
    power = [(0,) * n for _ in range(n)]
    comm = {}
    for lineno, ln in lines[1:]:
        if ln.startswith("w "):
            parts = ln.split()
            if len(parts) != 3:
                raise PresentationSyntaxError(f"line {lineno}: expected 'w i weight'")
            i = int(parts[1]) - 1
            if not 0 <= i < n:
                raise PresentationSyntaxError(f"line {lineno}: generator index out of range")
            weights[i] = int(parts[2])
            continue
        if ":" not in ln:
            raise PresentationSyntaxError(f"line {lineno}: missing ':'")
        lhs, rhs = ln.split(":", 1)
        parts = lhs.split()
        word = _parse_word(rhs, n, p, lineno)
        if parts[0] == "p" and len(parts) == 2:
            i = int(parts[1]) - 1
            if not 0 <= i < n:
                raise PresentationSyntaxError(f"line {lineno}: generator index out of range")
            if any(word[:i + 1]):
                raise PresentationSyntaxError(f"line {lineno}: right side must use generators after g{i + 1}")
            power[i] = word
        elif parts[0] == "c" and len(parts) == 3:
            j, i = int(parts[1]) - 1, int(parts[2]) - 1
            if not 0 <= i < j < n:
                raise PresentationSyntaxError(f"line {lineno}: commutator needs n >= j > i >= 1")
            if any(word[:j + 1]):
                raise PresentationSyntaxError(f"line {lineno}: right side must use generators after g{j + 1}")
            comm[(j, i)] = word
        else:
            raise PresentationSyntaxError(f"line {lineno}: unknown relation {lhs.strip()!r}")
    if any(w is None for w in weights):
        raise PresentationSyntaxError("every generator needs a 'w' line")
    return PcPresentation(p, weights, power, comm)


def _format_word(v) -> str:
    return " ".join(f"g{k + 1}^{e}" for k, e in enumerate(v) if e)


def format_presentation(pres: PcPresentation) -> str:
    out = [f"{pres.p} {pres.n}"]
    for k, w in enumerate(pres.weights):
        out.append(f"w {k + 1} {w}")
    for i, v in enumerate(pres.power):
        if any(v):
            out.append(f"p {i + 1} : {_format_word(v)}")
    for (j, i) in sorted(pres.comm):
        out.append(f"c {j + 1} {i + 1} : {_format_word(pres.comm[(j, i)])}")
    return "\n".join(out) + "\n"
