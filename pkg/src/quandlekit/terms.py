"""Quandle terms in left-associated form, presentations, and the passage to
enveloping-group presentations.

A :class:`LeftWord` ``a0 *^e1 a1 *^e2 ... *^ek ak`` is stored as its base
symbol and the tail ``((e1, a1), ..., (ek, ak))``.  Text form uses ``*`` and
``*~`` (dual), e.g. ``a*b*~c``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .quandles import FiniteQuandle

Letter = tuple  # (exponent in {-1, +1}, symbol)


@dataclass(frozen=True)
class LeftWord:
    base: str
    tail: tuple = ()

    @classmethod
    def gen(cls, symbol: str) -> "LeftWord":
        return cls(symbol, ())

    def symbols(self) -> set:
        return {self.base} | {s for _, s in self.tail}

    def __len__(self):
        return len(self.tail)

    def rmul(self, letters: Sequence[Letter]) -> "LeftWord":
        """Append letters on the right, without any simplification."""
        return LeftWord(self.base, self.tail + tuple((int(e), s) for e, s in letters))

    def is_canonical(self) -> bool:
        return canonicalize(self) == self

    def __str__(self):
        return self.base + "".join(("*" if e > 0 else "*~") + s for e, s in self.tail)


def canonicalize(w: LeftWord) -> LeftWord:
    """Cancel adjacent ``*^e a *^-e a`` pairs and absorb ``a0 *^e a0`` at the head,
    to a fixed point."""
    stack: list = []
    for e, s in w.tail:
        if stack and stack[-1][1] == s and stack[-1][0] == -e:
            stack.pop()
        elif not stack and s == w.base:
            continue
        else:
            stack.append((e, s))
    return LeftWord(w.base, tuple(stack))


def mul_raw(w1: LeftWord, e: int, w2: LeftWord) -> LeftWord:
    """``w1 *^e w2`` expanded by the left association identity, unsimplified:
    w1, then the tail of w2 reversed with negated exponents, then ``(e, base(w2))``,
    then the tail of w2."""
    back = tuple((-d, s) for d, s in reversed(w2.tail))
    return LeftWord(w1.base, w1.tail + back + ((e, w2.base),) + w2.tail)


def mul(w1: LeftWord, e: int, w2: LeftWord) -> LeftWord:
    return canonicalize(mul_raw(w1, e, w2))


def evaluate(Q: FiniteQuandle, assign: Mapping[str, int], w: LeftWord) -> int:
    try:
        v = assign[w.base]
        for e, s in w.tail:
            v = Q.table[v, assign[s]] if e > 0 else Q.dual[v, assign[s]]
    except KeyError as exc:
        raise KeyError(f"symbol {exc.args[0]!r} is not assigned") from None
    return int(v)


# ---------------------------------------------------------------- parsing

# symbols may carry a signed numeric subscript, e.g. a3 or a-2
_TOKEN = re.compile(r"\s*(\*~|\*|\(|\)|[A-Za-z_][A-Za-z0-9_]*(?:-?\d+)?)")


class TermSyntaxError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected input at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_term(text: str) -> LeftWord:
    """Parse ``a*b*~(c*d)``; products are left-associated and parenthesised
    subterms are folded in with :func:`mul`.  The result is canonical."""
    toks = _tokens(text)
    pos = 0

    def atom():
        nonlocal pos
        if pos >= len(toks):
            raise TermSyntaxError(f"unexpected end of term {text!r}")
        t = toks[pos]
        pos += 1
        if t == "(":
            w = expr()
            if pos >= len(toks) or toks[pos] != ")":
                raise TermSyntaxError(f"missing ')' in {text!r}")
            pos += 1
            return w
        if t in ("*", "*~", ")"):
            raise TermSyntaxError(f"unexpected {t!r} in {text!r}")
        return LeftWord.gen(t)

    def expr():
        nonlocal pos
        w = atom()
        while pos < len(toks) and toks[pos] in ("*", "*~"):
            e = 1 if toks[pos] == "*" else -1
            pos += 1
            w = mul(w, e, atom())
        return w

    w = expr()
    if pos != len(toks):
        raise TermSyntaxError(f"trailing input in {text!r}")
    return w


def parse_word_raw(text: str) -> LeftWord:
    """Parse a flat left-associated word without simplifying it."""
    toks = _tokens(text)
    if not toks or toks[0] in ("*", "*~", "(", ")"):
        raise TermSyntaxError(f"bad word {text!r}")
    base = toks[0]
    tail = []
    i = 1
    while i < len(toks):
        if toks[i] not in ("*", "*~") or i + 1 >= len(toks) or toks[i + 1] in ("*", "*~", "(", ")"):
            raise TermSyntaxError(f"bad word {text!r}")
        tail.append((1 if toks[i] == "*" else -1, toks[i + 1]))
        i += 2
    return LeftWord(base, tuple(tail))


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class QuandlePresentation:
    generators: tuple
    relations: tuple = ()  # ((lhs, rhs), ...)
    name: str = ""

    def __post_init__(self):
        gens = set(self.generators)
        for i, (l, r) in enumerate(self.relations):
            missing = (l.symbols() | r.symbols()) - gens
            if missing:
                raise ValueError(f"relation {i + 1} uses undeclared symbols {sorted(missing)}")

    def canonical(self) -> "QuandlePresentation":
        rels = tuple((canonicalize(l), canonicalize(r)) for l, r in self.relations)
        return QuandlePresentation(self.generators, rels, self.name)

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        lines.append("gens " + " ".join(self.generators))
        lines += [f"rel {l} = {r}" for l, r in self.relations]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> QuandlePresentation:
    gens = None
    rels = []
    name = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not name:
                name = line[1:].strip()
            continue
        head, _, rest = line.partition(" ")
        if head == "gens":
            gens = tuple(rest.split())
        elif head == "rel":
            if "=" not in rest:
                raise TermSyntaxError(f"line {lineno}: relation needs '='")
            lhs, rhs = rest.split("=", 1)
            rels.append((parse_term(lhs), parse_term(rhs)))
        else:
            raise TermSyntaxError(f"line {lineno}: expected 'gens' or 'rel'")
    if gens is None:
        raise TermSyntaxError("presentation has no 'gens' line")
    return QuandlePresentation(gens, tuple(rels), name)


# ---------------------------------------------------------------- free groups


def free_reduce(word) -> tuple:
    """Freely reduce a sequence of ``(symbol, exponent)`` syllables."""
    out: list = []
    for s, k in word:
        if k == 0:
            continue
        if out and out[-1][0] == s:
            k += out[-1][1]
            out.pop()
            if k:
                out.append((s, k))
        else:
            out.append((s, k))
    return tuple(out)


def group_inverse(word) -> tuple:
    return tuple((s, -k) for s, k in reversed(word))


def group_mul(*words) -> tuple:
    return free_reduce(tuple(x for w in words for x in w))


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        w = free_reduce(((w[-1][0], w[-1][1] + w[0][1]),) + w[1:-1])
    return w


def _letters(word) -> list:
    out = []
    for s, k in word:
        out.extend([(s, 1 if k > 0 else -1)] * abs(k))
    return out


def cyclic_conjugates(word) -> set:
    w = _letters(cyclic_reduce(word))
    return {free_reduce(tuple(w[i:] + w[:i])) for i in range(max(1, len(w)))}


def relators_equivalent(r1, r2) -> bool:
    """True if ``r1`` is a cyclic conjugate of ``r2`` or of ``r2^-1``; such
    relators define the same normal closure."""
    target = cyclic_reduce(r1)
    return target in cyclic_conjugates(r2) or target in cyclic_conjugates(group_inverse(r2))


def exponent_sums(word) -> dict:
    out: dict = {}
    for s, k in word:
        out[s] = out.get(s, 0) + k
    return {s: k for s, k in out.items() if k}


def format_group_word(word) -> str:
    if not word:
        return "1"
    return " ".join(s if k == 1 else f"{s}^{k}" for s, k in word)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = field(default=())

    def to_text(self) -> str:
        lines = ["gens " + " ".join(self.generators)]
        lines += ["rel " + format_group_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"


def to_group_word(w: LeftWord) -> tuple:
    """``a0 -> a0``, ``w *^e x -> x^-e w x^e``."""
    g = ((w.base, 1),)
    for e, s in w.tail:
        g = group_mul(((s, -e),), g, ((s, e),))
    return g


def env_presentation(P: QuandlePresentation) -> GroupPresentation:
    """Relation ``l = r`` becomes the relator ``phi(l) phi(r)^-1``."""
    rels = tuple(group_mul(to_group_word(l), group_inverse(to_group_word(r))) for l, r in P.relations)
    return GroupPresentation(P.generators, rels)
