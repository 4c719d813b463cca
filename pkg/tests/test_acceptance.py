"""Exit criteria, one test each.  Every test prints a [PASS]/[FAIL] line and
the lines are repeated in the terminal summary."""
import random
import time
from dataclasses import replace
from fractions import Fraction
from itertools import permutations, product
from math import gcd

import numpy as np
import pytest

import oracles
import tampering
from quandlekit.certificates import CertificateError, make_certificate, trefoil_left_derivation, verify_certificate
from quandlekit.free_orders import (
    RackElement,
    eps,
    inverse,
    magnus_compare,
    quandle_compare,
    quandle_normalize,
    quandle_op,
    wmul,
)
from quandlekit.groups import cyclic, group_catalog, multiplication_automorphism
from quandlekit.links import BraidWord, closure_presentation, count_homs, parse_braid, torus_braid, torus_presentation
from quandlekit.ordering import (
    ADMISSIBLE_TYPES,
    EQ,
    GT,
    LT,
    FiniteOrder,
    alexander_sample_check,
    classify_order,
    dual_commutation_failures,
    is_uniform,
    random_pair,
    search_order,
)
from quandlekit.quandles import (
    QuandleAxiomError,
    alexander,
    axiom_violations,
    core,
    dihedral,
    enumerate_quandles,
    is_quandle,
    property_report,
    quandle_catalog,
    trivial,
    validate_quandle,
)
from quandlekit.terms import (
    LeftWord,
    QuandlePresentation,
    env_presentation,
    group_inverse,
    group_mul,
    mul,
    parse_term,
    relators_equivalent,
)

pytestmark = pytest.mark.acceptance


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _oracle_count(P, Q):
    rels = [((l.base, l.tail), (r.base, r.tail)) for l, r in P.relations]
    return oracles.count_homs(list(P.generators), rels, Q.table.tolist())


def _witness_fails(T, v):
    if v.axiom == "Q1":
        (x,) = v.witness
        return T[x, x] != x
    if v.axiom == "Q2":
        x1, x2, y = v.witness
        return x1 != x2 and T[x1, y] == T[x2, y]
    x, y, z = v.witness
    return T[T[x, y], z] != T[T[x, z], T[y, z]]


@pytest.mark.criterion(1)
def test_axiom_validator(criterion):
    with Clock() as clk:
        for n in range(1, 9):
            T = dihedral(n).table
            assert is_quandle(T) and oracles.is_quandle(T.tolist()) and axiom_violations(T) == []

        base = dihedral(5).table
        mutations = 0
        for x, y, v in product(range(5), repeat=3):
            if base[x, y] == v:
                continue
            T = base.copy()
            T[x, y] = v
            with pytest.raises(QuandleAxiomError) as info:
                validate_quandle(T)
            named = {w.axiom for w in info.value.violations}
            assert oracles.first_failing_axiom(T.tolist()) in named
            assert all(_witness_fails(T, w) for w in info.value.violations)
            mutations += 1

        found = {Q.table.tobytes() for Q in enumerate_quandles(3)}
        expected = set()
        for flat in product(range(3), repeat=9):
            T = [list(flat[0:3]), list(flat[3:6]), list(flat[6:9])]
            if oracles.is_quandle(T):
                expected.add(np.array(T, dtype=np.int64).tobytes())
        assert found == expected
        for Q in enumerate_quandles(3):
            validate_quandle(Q.table)
    assert clk.elapsed < 5
    criterion(f"R_1..R_8 valid; {mutations} R_5 mutations rejected; {len(found)} valid 3-tables of 3^9 ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(2)
def test_property_flags(criterion):
    r3, r4 = property_report(dihedral(3)), property_report(dihedral(4))
    assert (r3.commutative, r3.latin, r3.simple, r3.connected) == (True, True, True, True)
    assert (r4.involutory, r4.commutative, r4.latin, r4.simple, r4.connected) == (True, False, False, False, False)
    groups = [G for G in group_catalog(12) if G.size <= 12]
    for G in groups:
        assert property_report(core(G)).involutory
    criterion(f"R_3 and R_4 flags exact; core(G) involutory for {len(groups)} catalog groups")


@pytest.mark.criterion(3)
def test_order_search(criterion):
    with Clock() as clk:
        nontrivial = [Q for Q in quandle_catalog(5) + enumerate_quandles(3) if not Q.is_trivial()]
        for Q in nontrivial:
            for side in ("right", "left"):
                res = search_order(Q, side)
                assert res.witness is None and res.count == 0
            T = Q.table.tolist()
            assert oracles.right_orders(T) == 0 == oracles.left_orders(T)
        facts = [1, 1, 2, 6, 24, 120]
        for n in range(1, 6):
            assert search_order(trivial(n), "right").count == facts[n] == oracles.right_orders(trivial(n).table.tolist())
        # a single point orders vacuously on both sides; from two points on, x*y = x kills left invariance
        for n in range(2, 6):
            assert search_order(trivial(n), "left").count == 0
    assert clk.elapsed < 60
    criterion(f"{len(nontrivial)} non-trivial quandles (catalog and all 3-tables): no right or left order; trivial n!/0 ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(4)
def test_uniform_types_are_admissible(criterion):
    uniform, total = 0, 0
    for Q in enumerate_quandles(3):
        for seq in permutations(range(3)):
            t = classify_order(Q, FiniteOrder.from_sequence(seq))
            assert tuple(s.value for s in t) == oracles.order_type(Q.table.tolist(), seq)
            total += 1
            if is_uniform(t):
                uniform += 1
                assert t in ADMISSIBLE_TYPES
    criterion(f"{uniform} uniform quadruples among {total} (quandle, order) pairs, all admissible")


@pytest.mark.criterion(5)
def test_rational_alexander_examples(criterion):
    with Clock() as clk:
        expected = {
            Fraction(1): (LT, LT, EQ, EQ),
            Fraction(1, 2): (LT, LT, LT, GT),
            Fraction(3): (LT, LT, GT, LT),
            Fraction(-2): (GT, GT, LT, LT),
        }
        for u, t in expected.items():
            rep = alexander_sample_check(u, trials=10_000)
            assert rep.type == t and rep.ok, rep.violations[:3]

        rep = alexander_sample_check(Fraction(1, 3), trials=10_000)
        assert rep.ok and rep.sandwich_checked == 10_000
        # independent recomputation of both chains on a fresh sample
        u = Fraction(1, 3)
        op = oracles.rational_alexander_op(u)

        def dop(x, y):
            return (x - (1 - u) * y) / u

        rng = random.Random(17)
        for _ in range(2000):
            x, y = random_pair(rng)
            assert op(dop(x, y), y) == x
            c1 = [dop(x, y), x, op(x, y), y, dop(y, x)]
            c2 = [dop(x, y), x, op(y, x), y, dop(y, x)]
            assert c1 == sorted(c1) and c2 == sorted(c2) and len(set(c1)) == 5 == len(set(c2))

        assert dual_commutation_failures(2, trials=10_000) == []
    assert clk.elapsed < 30
    criterion(f"4 regimes x 10^4 trials clean; sandwich chains hold at u=1/3; Alex(2) dual identity exact ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(6)
def test_left_associated_product(criterion):
    quandles = [dihedral(3), dihedral(5), dihedral(7), alexander(cyclic(5), multiplication_automorphism(5, 2))]
    tables = [(Q, Q.table.tolist(), Q.dual.tolist()) for Q in quandles]
    syms = ["a", "b", "c", "d"]
    rng = random.Random(6)

    def rand_word():
        return LeftWord(rng.choice(syms), tuple((rng.choice((1, -1)), rng.choice(syms)) for _ in range(rng.randint(0, 8))))

    checked = 0
    for _ in range(10_000):
        w1, e, w2 = rand_word(), rng.choice((1, -1)), rand_word()
        Q, T, D = rng.choice(tables)
        assign = {s: rng.randrange(Q.size) for s in syms}
        v1 = oracles.eval_word(T, D, assign, w1.base, w1.tail)
        v2 = oracles.eval_word(T, D, assign, w2.base, w2.tail)
        direct = T[v1][v2] if e > 0 else D[v1][v2]
        w = mul(w1, e, w2)
        assert oracles.eval_word(T, D, assign, w.base, w.tail) == direct
        checked += 1
    criterion(f"{checked} random (w1, e, w2) agree with direct composition over R_3, R_5, R_7, Alex(Z_5, x2)")


@pytest.mark.criterion(7)
def test_closure_equals_closed_form(criterion):
    with Clock() as clk:
        pairs = [(m, n) for m in range(2, 7) for n in range(2, 9)]
        for m, n in pairs:
            assert set(closure_presentation(torus_braid(m, n)).relations) == set(torus_presentation(m, n).relations)
    assert clk.elapsed < 10
    criterion(f"{len(pairs)} (m, n) pairs: relation sets equal ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(8)
def test_coloring_counts(criterion):
    with Clock() as clk:
        trefoil = torus_presentation(2, 3)
        fig8_braid = parse_braid("s1 -s2 s1 -s2", 3)
        fig8 = closure_presentation(fig8_braid)
        cases = [
            (trefoil, dihedral(3), 9),
            (fig8, dihedral(3), 3),
            (fig8, dihedral(5), 25),
            (torus_presentation(2, 5), dihedral(5), 25),
        ]
        for P, Q, want in cases:
            assert _oracle_count(P, Q) == want
            assert count_homs(P, Q) == want
        braids = [torus_braid(2, 3), fig8_braid, torus_braid(2, 5), torus_braid(3, 4), parse_braid("s1 s2 -s1 s3 -s2", 4)]
        for b in braids:
            P = closure_presentation(b)
            assert count_homs(P, trivial(1)) == 1 == _oracle_count(P, trivial(1))
            for i in range(1, b.strands):
                longer = closure_presentation(b * BraidWord(b.strands, ((i, 1), (i, -1))))
                for Q in (dihedral(3), dihedral(5)):
                    assert count_homs(longer, Q) == count_homs(P, Q) == _oracle_count(P, Q)
    assert clk.elapsed < 20
    criterion(f"trefoil/R_3=9, fig-8/R_3=3, fig-8/R_5=25, T(2,5)/R_5=25, singleton=1; stable under s_i s_i^-1 ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(9)
def test_certificates(criterion):
    cases = [(2, 3), (3, 4), (3, 5), (4, 6), (4, 10)]
    for m, n in cases:
        c = make_certificate(m, n)
        assert verify_certificate(torus_presentation(m, n), c).ok
        assert len(c.cycle) == m // gcd(m, n)
    tampered = 0
    for m, n in cases:
        for label, cert, where in tampering.variants(make_certificate(m, n)):
            res = verify_certificate(torus_presentation(m, n), cert)
            assert not res.ok and res.step == where, (m, n, label, res)
            tampered += 1
    assert tampered >= 20
    for m, n in [(2, 4), (3, 9)]:
        with pytest.raises(CertificateError):
            make_certificate(m, n)
    criterion(f"5 certificates accepted with chain length m/gcd; {tampered} tampered variants rejected at the expected step; (2,4), (3,9) refused")


@pytest.mark.criterion(10)
def test_trefoil_left_derivation(criterion):
    c = trefoil_left_derivation()
    P = torus_presentation(2, 3)
    assert verify_certificate(P, c).ok and c.order == "left"
    idem = c.steps[1]
    assert idem.rule == "IDEM" and idem.result == (LeftWord("a1"), parse_term("a1*a2"))
    assert c.judgments()[0] == (LeftWord("a1"), LeftWord("a2"))
    assert c.judgments()[-1] == (LeftWord("a2"), LeftWord("a1"))
    for k in range(len(c.steps)):
        steps = c.steps[:k] + c.steps[k + 1:]
        assert not verify_certificate(P, replace(c, steps=steps, cycle=(0, len(steps)))).ok
    criterion(f"{len(c.steps)}-step chain a1 <> a2 ... a2 <> a1 accepted; each of {len(c.steps)} single-step removals rejected")


def _rand_free_word(rng, max_len=6):
    letters = []
    for _ in range(rng.randint(0, max_len)):
        letters.append((rng.randint(0, 1), rng.choice((1, -1))))
    out = []
    for a, e in letters:  # free reduction, one letter at a time
        if out and out[-1][0] == a:
            k = out[-1][1] + e
            out.pop()
            if k:
                out.append((a, k))
        else:
            out.append((a, e))
    return tuple(out)


@pytest.mark.criterion(11)
def test_magnus_order(criterion):
    rng = random.Random(11)
    A, B = ((0, 1),), ((1, 1),)
    with Clock() as clk:
        pairs = 0
        while pairs < 1000:
            u, v = _rand_free_word(rng), _rand_free_word(rng)
            if u == v:
                continue
            s, t = magnus_compare(u, v), magnus_compare(v, u)
            assert {s, t} == {LT, GT}
            pairs += 1
        for _ in range(1000):
            ws = [_rand_free_word(rng) for _ in range(3)]
            for u, v, w in permutations(ws):
                if magnus_compare(u, v) is LT and magnus_compare(v, w) is LT:
                    assert magnus_compare(u, w) is LT
        for _ in range(1000):
            u, v, w = (_rand_free_word(rng) for _ in range(3))
            s = magnus_compare(u, v)
            assert magnus_compare(wmul(w, u), wmul(w, v)) is s
            assert magnus_compare(wmul(u, w), wmul(v, w)) is s
        assert magnus_compare(inverse(A), A) is LT
        assert magnus_compare((), wmul(inverse(A), inverse(B), A, B)) is LT
        w = wmul(A, inverse(B), B, B, A)
        assert magnus_compare(w, w) is EQ
    assert clk.elapsed < 60
    criterion(f"totality/antisymmetry on 1000 pairs, transitivity and bi-invariance on 1000 triples, fixed examples exact ({clk.elapsed:.2f}s)")


@pytest.mark.criterion(12)
def test_free_quandle_order(criterion):
    rng = random.Random(12)

    def rand_elem():
        return quandle_normalize(RackElement(rng.randint(0, 1), _rand_free_word(rng, 4)))

    for _ in range(1000):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        s = quandle_compare(x, y)
        assert quandle_compare(quandle_op(x, z), quandle_op(y, z)) is s
        assert eps(quandle_op(x, y)) == wmul(inverse(eps(y)), eps(x), eps(y))
    for _ in range(300):
        a, u = rng.randint(0, 1), _rand_free_word(rng, 4)
        base = quandle_normalize(RackElement(a, u))
        assert quandle_normalize(base) == base
        for k in range(-3, 4):
            assert quandle_normalize(RackElement(a, wmul(((a, k),) if k else (), u))) == base
    criterion("right invariance on 1000 triples; normalize idempotent and constant on (a, a^k u), |k| <= 3; eps is a homomorphism")


@pytest.mark.criterion(13)
def test_enveloping_groups(criterion):
    braid = group_mul((("a1", 1), ("a2", 1), ("a1", 1)), group_inverse((("a2", 1), ("a1", 1), ("a2", 1))))
    trefoil = torus_presentation(2, 3)
    relators = env_presentation(trefoil).relators
    assert relators and all(relators_equivalent(r, braid) for r in relators)
    for k in range(1, 5):
        gens = [f"x{i}" for i in range(k)]
        rels = [(parse_term(f"{g}*{h}"), LeftWord(g)) for g in gens for h in gens if g != h]
        G = env_presentation(QuandlePresentation(tuple(gens), tuple(rels)))
        assert len(G.relators) == k * (k - 1)
        for (l, _), r in zip(rels, G.relators):
            g, h = l.base, l.tail[0][1]
            assert relators_equivalent(r, ((g, -1), (h, -1), (g, 1), (h, 1)))
    criterion("trefoil relators freely equivalent to the braid relator; trivial quandles on k <= 4 give commutators")
