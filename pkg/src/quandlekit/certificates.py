"""Machine-checkable refutations of orderability for torus-link quandles.

A certificate starts from a formal judgment ``a_i <> a_j`` between two distinct
generators and derives new judgments with sound rules.  ``<>`` is never
resolved to < or >: every rule holds for either reading.  A cycle of judgments
``x0 <> x1, x1 <> x2, ..., xk <> x0`` is then a contradiction by transitivity.

Rules (each step records the judgment it claims to produce):

``RMUL``    append letters on the right of both sides (right orders only)
``LMUL``    left-multiply both sides by a word, unsimplified (left orders only)
``IDEM``    drop a head letter equal to the base: ``x *^e x -> x``
``REDUCE``  rewrite subscripts with a_{mj+k} = a_k
``REWRITE`` replace a side equal to ``source . suffix`` (canonical) by
            ``target . suffix`` (canonical), for a relation instance lifted by
            ``m * shift`` in every subscript
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from math import gcd

from .links import reduce_index, subscript, sym, torus_presentation
from .terms import LeftWord, QuandlePresentation, canonicalize, mul_raw, parse_term, parse_word_raw

RULES = ("RMUL", "LMUL", "IDEM", "REDUCE", "REWRITE")
SIDES = ("lhs", "rhs")
DIRECTIONS = ("lhs_to_rhs", "rhs_to_lhs")


class CertificateError(ValueError):
    """Raised when a certificate cannot be generated or parsed."""


@dataclass(frozen=True)
class Step:
    rule: str
    result: tuple  # (lhs, rhs) claimed after this step
    side: str = ""
    letters: tuple = ()  # RMUL / REWRITE suffix: ((e, symbol), ...)
    word: LeftWord | None = None  # LMUL
    relation: int = 0  # REWRITE, 1-based
    shift: int = 0
    direction: str = ""

    def describe(self) -> str:
        if self.rule == "RMUL":
            return "RMUL " + "".join(("*" if e > 0 else "*~") + s for e, s in self.letters)
        if self.rule == "LMUL":
            return f"LMUL {self.word}"
        if self.rule == "REWRITE":
            extra = f" shift {self.shift}" if self.shift else ""
            suffix = "".join(("*" if e > 0 else "*~") + s for e, s in self.letters)
            return f"REWRITE {self.side} by R{self.relation} {self.direction}{extra}" + (f" suffix {suffix}" if suffix else "")
        return f"{self.rule} {self.side}"


@dataclass(frozen=True)
class Certificate:
    presentation: QuandlePresentation
    modulus: int
    assumption: tuple
    steps: tuple = ()
    cycle: tuple = (0,)
    order: str = "right"

    def judgments(self) -> list:
        """Assumption followed by each step's claimed result."""
        return [self.assumption] + [s.result for s in self.steps]

    def chain(self) -> list:
        js = self.judgments()
        return [js[i] for i in self.cycle if 0 <= i < len(js)]

    def to_text(self) -> str:
        lines = [f"{self.order} order, subscripts mod {self.modulus}", f"  0. {_fmt(self.assumption)}  (assumption)"]
        for t, s in enumerate(self.steps, 1):
            lines.append(f"{t:3d}. {_fmt(s.result)}  ({s.describe()})")
        lines.append("cycle: " + " , ".join(_fmt(j) for j in self.chain()))
        return "\n".join(lines)


def _fmt(j) -> str:
    return f"{j[0]} <> {j[1]}"


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    step: int | str | None = None  # failing step index, or "conclusion"
    reason: str = ""

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"accepted": self.ok, "step": self.step, "reason": self.reason}


# ---------------------------------------------------------------- replay


def _map_subscripts(w: LeftWord, f) -> LeftWord:
    return LeftWord(sym(f(subscript(w.base))), tuple((e, sym(f(subscript(s)))) for e, s in w.tail))


def _check_symbols(words) -> str | None:
    for w in words:
        for s in w.symbols():
            try:
                subscript(s)
            except ValueError:
                return f"symbol {s!r} is not of the form a<k>"
    return None


def _apply(P: QuandlePresentation, m: int, order: str, step: Step, cur: tuple):
    """Return the judgment produced by ``step`` from ``cur``, or an error string."""
    lhs, rhs = cur
    if step.rule == "RMUL":
        if order != "right":
            return "RMUL is only sound for right orders"
        if not step.letters:
            return "RMUL needs at least one letter"
        if any(e not in (1, -1) for e, _ in step.letters):
            return "RMUL exponents must be +1 or -1"
        bad = _check_symbols([LeftWord(s) for _, s in step.letters])
        if bad:
            return bad
        return lhs.rmul(step.letters), rhs.rmul(step.letters)
    if step.rule == "LMUL":
        if order != "left":
            return "LMUL is only sound for left orders"
        if step.word is None:
            return "LMUL needs a word"
        bad = _check_symbols([step.word])
        if bad:
            return bad
        return mul_raw(step.word, 1, lhs), mul_raw(step.word, 1, rhs)
    if step.side not in SIDES:
        return f"unknown side {step.side!r}"
    i = SIDES.index(step.side)
    w = cur[i]
    if step.rule == "IDEM":
        if not w.tail or w.tail[0][1] != w.base:
            return f"idempotency does not apply to {w}"
        new = LeftWord(w.base, w.tail[1:])
    elif step.rule == "REDUCE":
        new = _map_subscripts(w, lambda k: reduce_index(k, m))
    elif step.rule == "REWRITE":
        if not 1 <= step.relation <= len(P.relations):
            return f"no relation R{step.relation}"
        if step.direction not in DIRECTIONS:
            return f"unknown direction {step.direction!r}"
        bad = _check_symbols([LeftWord(s) for _, s in step.letters])
        if bad:
            return bad
        l, r = (_map_subscripts(x, lambda k: k + m * step.shift) for x in P.relations[step.relation - 1])
        src, tgt = (l, r) if step.direction == "lhs_to_rhs" else (r, l)
        expected = canonicalize(src.rmul(step.letters))
        if w != expected:
            return f"{w} does not match relation instance {expected}"
        new = canonicalize(tgt.rmul(step.letters))
    else:
        return f"unknown rule {step.rule!r}"
    return (new, rhs) if i == 0 else (lhs, new)


def verify_certificate(P: QuandlePresentation, cert: Certificate) -> VerifyResult:
    """Replay every step against ``P``.  Step 0 is the assumption."""
    m = cert.modulus
    if m < 1 or tuple(P.generators) != tuple(sym(k) for k in range(1, m + 1)):
        return VerifyResult(False, 0, f"presentation generators are not a1..a{m}")
    if (cert.presentation.generators, cert.presentation.relations) != (P.generators, P.relations):
        return VerifyResult(False, 0, "certificate was written for a different presentation")
    if cert.order not in ("right", "left"):
        return VerifyResult(False, 0, f"unknown order side {cert.order!r}")
    a, b = cert.assumption
    if a.tail or b.tail or a.base not in P.generators or b.base not in P.generators:
        return VerifyResult(False, 0, "assumption must relate two generators")
    if a == b:
        return VerifyResult(False, 0, "assumption must relate distinct generators")

    judgments = [cert.assumption]
    for t, step in enumerate(cert.steps, 1):
        out = _apply(P, m, cert.order, step, judgments[-1])
        if isinstance(out, str):
            return VerifyResult(False, t, out)
        if out != tuple(step.result):
            return VerifyResult(False, t, f"step yields {_fmt(out)}, certificate claims {_fmt(step.result)}")
        judgments.append(out)

    cyc = cert.cycle
    if not cyc:
        return VerifyResult(False, "conclusion", "empty cycle")
    if any(not 0 <= i < len(judgments) for i in cyc):
        return VerifyResult(False, "conclusion", "cycle cites a judgment that does not exist")
    for i, j in zip(cyc, cyc[1:] + cyc[:1]):
        if judgments[i][1] != judgments[j][0]:
            return VerifyResult(False, "conclusion", f"chain breaks between {_fmt(judgments[i])} and {_fmt(judgments[j])}")
    return VerifyResult(True, None, f"cycle of length {len(cyc)} closes")


# ---------------------------------------------------------------- generation


def _inverse_mod(a: int, n: int) -> int:
    return pow(a, -1, n)


class _Builder:
    def __init__(self, P, m, order, assumption):
        self.P, self.m, self.order = P, m, order
        self.assumption = assumption
        self.steps: list = []

    @property
    def current(self):
        return self.steps[-1].result if self.steps else self.assumption

    def add(self, rule, **kw):
        probe = Step(rule, ((LeftWord("a1"),) * 2), **kw)
        out = _apply(self.P, self.m, self.order, probe, self.current)
        if isinstance(out, str):  # pragma: no cover - generator bug
            raise AssertionError(out)
        self.steps.append(replace(probe, result=out))
        return len(self.steps)


def make_certificate(m: int, n: int) -> Certificate:
    """Refute right-orderability of the T(m, n) link quandle.

    Requires m, n >= 2 with neither a multiple of the other.  With m < n and
    d = gcd(m, n), one descent block right-multiplies by a_n * ... * a_1 and
    rewrites each side with a relation, lowering both subscripts by n mod m.
    K blocks with K n = -d (mod m) take a_x <> a_y to a_{x+d} <> a_{y+d}, so
    the judgments a_1 <> a_{1+d}, a_{1+d} <> a_{1+2d}, ... close after m/d.
    """
    if m < 2 or n < 2:
        raise CertificateError("need m, n >= 2")
    if m > n:
        m, n = n, m
    if n % m == 0:
        raise CertificateError(f"{n} is a multiple of {m}; the link quandle admits no such refutation")
    P = torus_presentation(m, n)
    d = gcd(m, n)
    r = m // d
    K = (-_inverse_mod((n // d) % r, r)) % r
    block = tuple((1, sym(k)) for k in range(n, 0, -1))

    b = _Builder(P, m, "right", (LeftWord(sym(1)), LeftWord(sym(1 + d))))
    cycle = [0]
    for _ in range(r - 1):
        for _ in range(K):
            b.add("RMUL", letters=block)
            for side in SIDES:
                b.add("REDUCE", side=side)
            for i, side in enumerate(SIDES):
                w = b.current[i]
                if w.tail and w.tail[0][1] == w.base:
                    b.add("IDEM", side=side)
            for i, side in enumerate(SIDES):
                x = subscript(b.current[i].base)
                b.add("REWRITE", side=side, relation=reduce_index(x - n, m), direction="rhs_to_lhs")
        cycle.append(len(b.steps))
    return Certificate(P, m, b.assumption, tuple(b.steps), tuple(cycle), "right")


def trefoil_left_derivation() -> Certificate:
    """a1 <> a2 implies a2 <> a1 in the trefoil quandle under a left order."""
    P = torus_presentation(2, 3)
    g1, g2 = LeftWord("a1"), LeftWord("a2")
    b = _Builder(P, 2, "left", (g1, g2))
    b.add("LMUL", word=g1)  # a1*a1 <> a1*a2
    b.add("IDEM", side="lhs")  # a1 <> a1*a2
    b.add("LMUL", word=g2)  # a2*a1 <> a2*~a2*a1*a2
    b.add("IDEM", side="rhs")  # a2*a1 <> a2*a1*a2
    # a1 = a2*a1*a2*a1 gives a1 = a1*~a1 = a2*a1*a2
    b.add("REWRITE", side="rhs", relation=1, direction="rhs_to_lhs", letters=((-1, "a1"),))
    b.add("LMUL", word=g1)  # a1*~a1*a2*a1 <> a1*a1
    b.add("IDEM", side="lhs")
    b.add("IDEM", side="rhs")  # a1*a2*a1 <> a1
    last = b.add("REWRITE", side="lhs", relation=2, direction="rhs_to_lhs")  # a2 <> a1
    return Certificate(P, 2, b.assumption, tuple(b.steps), (0, last), "left")


# ---------------------------------------------------------------- JSON


def _letters_out(letters):
    return [("*" if e > 0 else "*~") + s for e, s in letters]


def _letters_in(items):
    out = []
    for it in items:
        if it.startswith("*~"):
            out.append((-1, it[2:]))
        elif it.startswith("*"):
            out.append((1, it[1:]))
        else:
            raise CertificateError(f"bad letter {it!r}; expected '*a<k>' or '*~a<k>'")
    return tuple(out)


def certificate_to_dict(c: Certificate) -> dict:
    steps = []
    for s in c.steps:
        d: dict = {"rule": s.rule}
        if s.rule == "RMUL":
            d["letters"] = _letters_out(s.letters)
        elif s.rule == "LMUL":
            d["word"] = str(s.word)
        else:
            d["side"] = s.side
        if s.rule == "REWRITE":
            d.update(relation=s.relation, shift=s.shift, direction=s.direction, suffix=_letters_out(s.letters))
        d["result"] = {"lhs": str(s.result[0]), "rhs": str(s.result[1])}
        steps.append(d)
    P = c.presentation
    return {
        "presentation": {
            "name": P.name,
            "generators": list(P.generators),
            "relations": [[str(l), str(r)] for l, r in P.relations],
        },
        "order": c.order,
        "index_rule": {"modulus": c.modulus},
        "assumption": {"lhs": str(c.assumption[0]), "rhs": str(c.assumption[1])},
        "steps": steps,
        "conclusion": {"rule": "CYCLE", "judgments": list(c.cycle)},
    }


def certificate_from_dict(d: dict) -> Certificate:
    try:
        p = d["presentation"]
        rels = tuple((parse_term(l), parse_term(r)) for l, r in p["relations"])
        P = QuandlePresentation(tuple(p["generators"]), rels, p.get("name", ""))
        steps = []
        for s in d["steps"]:
            rule = s["rule"]
            result = (parse_word_raw(s["result"]["lhs"]), parse_word_raw(s["result"]["rhs"]))
            kw: dict = {}
            if rule == "RMUL":
                kw["letters"] = _letters_in(s["letters"])
            elif rule == "LMUL":
                kw["word"] = parse_word_raw(s["word"])
            else:
                kw["side"] = s["side"]
            if rule == "REWRITE":
                kw.update(
                    relation=int(s["relation"]),
                    shift=int(s.get("shift", 0)),
                    direction=s["direction"],
                    letters=_letters_in(s.get("suffix", [])),
                )
            steps.append(Step(rule, result, **kw))
        concl = d["conclusion"]
        if concl.get("rule") != "CYCLE":
            raise CertificateError("conclusion rule must be CYCLE")
        return Certificate(
            P,
            int(d["index_rule"]["modulus"]),
            (parse_word_raw(d["assumption"]["lhs"]), parse_word_raw(d["assumption"]["rhs"])),
            tuple(steps),
            tuple(int(i) for i in concl["judgments"]),
            d.get("order", "right"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CertificateError):
            raise
        raise CertificateError(f"malformed certificate: {exc}") from None


def certificate_to_json(c: Certificate) -> str:
    return json.dumps(certificate_to_dict(c), indent=2)


def certificate_from_json(text: str) -> Certificate:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"malformed certificate: {exc}") from None
    return certificate_from_dict(d)
