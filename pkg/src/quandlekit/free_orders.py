"""Magnus bi-order on free groups and the right orders it induces on free
racks, free quandles and (G, A)-quandles.

Free words are tuples of ``(generator index, non-zero exponent)`` syllables,
freely reduced.  Generators print as ``a, b, c, ...``.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from .ordering import EQ, GT, LT, OrderSymbol
from .quandles import validate_quandle
from .terms import free_reduce, group_inverse, group_mul

LETTERS = string.ascii_lowercase


class MagnusDepthError(RuntimeError):
    pass


# ---------------------------------------------------------------- free words


def word(*syllables) -> tuple:
    return free_reduce(tuple(syllables))


def inverse(w) -> tuple:
    return group_inverse(w)


def wmul(*ws) -> tuple:
    return group_mul(*ws)


def conjugate(w, by) -> tuple:
    """by^-1 w by."""
    return group_mul(group_inverse(by), w, by)


_SYLLABLE = re.compile(r"([a-z])(?:\^(-?\d+))?$")


def parse_free_word(text: str, rank: int) -> tuple:
    """Parse ``"a^2 b^-1 a"``; ``"1"`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.replace("*", " ").split():
        m = _SYLLABLE.match(tok)
        if not m:
            raise ValueError(f"bad syllable {tok!r}")
        idx = LETTERS.index(m.group(1))
        if idx >= rank:
            raise ValueError(f"letter {m.group(1)!r} outside rank {rank}")
        out.append((idx, int(m.group(2)) if m.group(2) else 1))
    return free_reduce(out)


def format_free_word(w) -> str:
    if not w:
        return "1"
    return " ".join(LETTERS[i] if k == 1 else f"{LETTERS[i]}^{k}" for i, k in w)


# ---------------------------------------------------------------- Magnus expansion


@dataclass(frozen=True)
class NcPolynomial:
    """Integer polynomial in non-commuting X_0, X_1, ... truncated above ``degree``.

    ``coeffs`` maps monomials (tuples of variable indices) to non-zero ints.
    """

    degree: int
    coeffs: dict

    def __getitem__(self, mono) -> int:
        return self.coeffs.get(tuple(mono), 0)

    def terms(self) -> list:
        """Monomials in graded lexicographic order."""
        return sorted(self.coeffs, key=lambda m: (len(m), m))

    def __str__(self):
        parts = []
        for m in self.terms():
            c = self.coeffs[m]
            mono = "".join(LETTERS[i].upper() for i in m) or "1"
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _power_series(k: int, degree: int) -> list:
    # coefficients of (1 + X)^k up to X^degree, k any integer
    s = [1]
    for j in range(1, degree + 1):
        s.append(s[-1] * (k - j + 1) // j)
    return s


def magnus_expand(w, degree: int) -> NcPolynomial:
    """Image of ``w`` under x_i -> 1 + X_i, truncated above ``degree``."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    poly = {(): 1}
    for i, k in free_reduce(w):
        series = _power_series(k, degree)
        nxt: dict = {}
        for mono, c in poly.items():
            room = degree - len(mono)
            for j in range(room + 1):
                sj = series[j]
                if sj:
                    key = mono + (i,) * j
                    nxt[key] = nxt.get(key, 0) + c * sj
        poly = {m: c for m, c in nxt.items() if c}
    return NcPolynomial(degree, poly)


def first_difference(p: NcPolynomial, q: NcPolynomial):
    """Smallest monomial (graded lex) where ``p`` and ``q`` differ, or None."""
    diff = [m for m in set(p.coeffs) | set(q.coeffs) if p[m] != q[m]]
    if not diff:
        return None
    return min(diff, key=lambda m: (len(m), m))


MAGNUS_CAP = 64


def magnus_compare(u, v, cap: int = MAGNUS_CAP) -> OrderSymbol:
    """Bi-invariant order: at the first monomial (graded lex, X_0 < X_1 < ...)
    where the expansions differ, the smaller coefficient is the smaller word.

    Equality is decided by free reduction.  The truncation degree doubles from
    2; exceeding ``cap`` raises :class:`MagnusDepthError`.
    """
    u, v = free_reduce(u), free_reduce(v)
    if u == v:
        return EQ
    degree = 2
    while degree <= cap:
        pu, pv = magnus_expand(u, degree), magnus_expand(v, degree)
        m = first_difference(pu, pv)
        if m is not None:
            return LT if pu[m] < pv[m] else GT
        degree *= 2
    raise MagnusDepthError(f"expansions agree up to degree {cap}")


# ---------------------------------------------------------------- free racks and quandles


@dataclass(frozen=True)
class RackElement:
    letter: int
    word: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "word", free_reduce(self.word))

    def __str__(self):
        return f"({LETTERS[self.letter]}, {format_free_word(self.word)})"


def quandle_normalize(x: RackElement) -> RackElement:
    """Strip the maximal power of the letter from the left of the word
    (the centraliser of a basis letter is the cyclic group it generates)."""
    w = x.word
    if w and w[0][0] == x.letter:
        w = w[1:]
    return RackElement(x.letter, w)


def rack_op(x: RackElement, y: RackElement, e: int = 1) -> RackElement:
    """(a, u) *^e (b, v) = (a, u v^-1 b^e v)."""
    return RackElement(x.letter, group_mul(x.word, inverse(y.word), ((y.letter, e),), y.word))


def quandle_op(x: RackElement, y: RackElement, e: int = 1) -> RackElement:
    return quandle_normalize(rack_op(x, y, e))


def eps(x: RackElement) -> tuple:
    """u^-1 a u."""
    return conjugate(((x.letter, 1),), x.word)


def _letters_first(x: RackElement, y: RackElement):
    if x.letter != y.letter:
        return LT if x.letter < y.letter else GT
    return None


def rack_compare(x: RackElement, y: RackElement, cap: int = MAGNUS_CAP) -> OrderSymbol:
    return _letters_first(x, y) or magnus_compare(x.word, y.word, cap)


def quandle_compare(x: RackElement, y: RackElement, cap: int = MAGNUS_CAP) -> OrderSymbol:
    """Letters first; equal letters compare through u^-1 a u."""
    return _letters_first(x, y) or magnus_compare(eps(quandle_normalize(x)), eps(quandle_normalize(y)), cap)


# ---------------------------------------------------------------- finite (G, A)-quandles


def centralizer(G: FiniteGroup, a: int) -> list:
    C = G.cayley
    return [g for g in range(G.size) if C[g, a] == C[a, g]]


def finite_ga_quandle(G: FiniteGroup, A) -> tuple:
    """Q(G, A) for a finite group: classes of (a, u) modulo (a, v u) ~ (a, u),
    v in C_G(a).  Returns the quandle and the labels ``(a, coset representative)``
    of its elements."""
    C = G.cayley
    labels = []
    index = {}
    for a in A:
        cent = centralizer(G, a)
        for u in range(G.size):
            coset = frozenset(int(C[v, u]) for v in cent)
            key = (a, coset)
            if key not in index:
                index[key] = len(labels)
                labels.append((a, min(coset)))
    cosets = {}
    for (a, coset), i in index.items():
        for u in coset:
            cosets[(a, u)] = i
    n = len(labels)
    T = np.empty((n, n), dtype=np.int64)
    for i, (a, u) in enumerate(labels):
        for j, (b, v) in enumerate(labels):
            w = C[C[C[u, G.inverse[v]], b], v]
            T[i, j] = cosets[(a, int(w))]
    return validate_quandle(T, f"Q({G.name},A)"), labels


def finite_eps(G: FiniteGroup, labels) -> list:
    """u^-1 a u for each labelled element."""
    C = G.cayley
    return [int(C[C[G.inverse[u], a], u]) for a, u in labels]
