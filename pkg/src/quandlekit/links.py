"""Braids, link-quandle presentations of braid closures, torus links, and
coloring counts.

Generators of a closure on m strands are named ``a1 .. am``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import kernels
from .quandles import FiniteQuandle
from .terms import LeftWord, QuandlePresentation, canonicalize, mul


class BraidError(ValueError):
    pass


def sym(k: int) -> str:
    return f"a{k}"


_SUB = re.compile(r"a(-?\d+)$")


def subscript(s: str) -> int:
    m = _SUB.match(s)
    if not m:
        raise ValueError(f"{s!r} is not a subscripted generator")
    return int(m.group(1))


def reduce_index(k: int, m: int) -> int:
    """a_{mj+k} = a_k with k in 1..m."""
    return (k - 1) % m + 1


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()  # ((i, sign), ...), 1 <= i <= strands - 1

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise BraidError(f"s{i} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise BraidError(f"bad sign {s}")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise BraidError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self):
        return " ".join(("" if s > 0 else "-") + f"s{i}" for i, s in self.letters)


def parse_braid(text: str, strands: int) -> BraidWord:
    """Tokens ``sI`` and ``-sI`` separated by whitespace."""
    letters = []
    for tok in text.split():
        m = re.fullmatch(r"(-?)s(\d+)", tok)
        if not m:
            raise BraidError(f"bad braid token {tok!r}")
        letters.append((int(m.group(2)), -1 if m.group(1) else 1))
    return BraidWord(strands, tuple(letters))


def torus_braid(m: int, n: int) -> BraidWord:
    """(s1 s2 ... s_{m-1})^n."""
    return BraidWord(m, tuple((i, 1) for _ in range(n) for i in range(1, m)))


def closure_labels(b: BraidWord) -> list:
    """Arc labels at the top of the braid, reading crossings bottom to top."""
    labels = [LeftWord.gen(sym(k)) for k in range(1, b.strands + 1)]
    for i, s in b.letters:
        lo, hi = labels[i - 1], labels[i]
        if s > 0:
            # the strand at i passes over and moves to i + 1
            labels[i - 1], labels[i] = mul(hi, 1, lo), lo
        else:
            labels[i - 1], labels[i] = hi, mul(lo, -1, hi)
    return labels


def closure_presentation(b: BraidWord) -> QuandlePresentation:
    labels = closure_labels(b)
    gens = tuple(sym(k) for k in range(1, b.strands + 1))
    rels = tuple((LeftWord.gen(g), canonicalize(w)) for g, w in zip(gens, labels))
    return QuandlePresentation(gens, rels, f"closure of {b}" if b.letters else "trivial braid")


def torus_presentation(m: int, n: int) -> QuandlePresentation:
    """a_i = a_{n+i} * a_n * a_{n-1} * ... * a_1, subscripts taken mod m."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    gens = tuple(sym(k) for k in range(1, m + 1))
    rels = []
    for i in range(1, m + 1):
        tail = tuple((1, sym(reduce_index(k, m))) for k in range(n, 0, -1))
        rhs = canonicalize(LeftWord(sym(reduce_index(n + i, m)), tail))
        rels.append((LeftWord.gen(sym(i)), rhs))
    return QuandlePresentation(gens, tuple(rels), f"T({m},{n})")


# ---------------------------------------------------------------- colorings


def compile_presentation(P: QuandlePresentation) -> tuple:
    """Flatten the relation words of ``P`` into int64 arrays for the kernels."""
    index = {g: i for i, g in enumerate(P.generators)}
    base, start, tgen, tsign = [], [0], [], []
    for l, r in P.relations:
        for w in (l, r):
            base.append(index[w.base])
            for e, s in w.tail:
                tgen.append(index[s])
                tsign.append(e)
            start.append(len(tgen))
    nrel = len(P.relations)
    arrays = (base, start, tgen, tsign, list(range(0, 2 * nrel, 2)), list(range(1, 2 * nrel, 2)))
    return tuple(np.asarray(a, dtype=np.int64) for a in arrays)


MAX_ASSIGNMENTS = 1 << 40


def count_homs(P: QuandlePresentation, Q: FiniteQuandle, parts: int = 1) -> int:
    """Number of assignments of the generators into ``Q`` satisfying every
    relation, i.e. colorings of the presented link by ``Q``."""
    k = len(P.generators)
    if Q.size**k > MAX_ASSIGNMENTS:
        raise ValueError(f"{Q.size}^{k} assignments is too many to enumerate")
    return kernels.count_colorings(Q.table, Q.dual, k, compile_presentation(P), parts)
