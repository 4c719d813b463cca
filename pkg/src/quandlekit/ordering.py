"""Linear orders on quandles: type quadruples, brute-force order search on
finite quandles, and the exact-rational Alexander family x*y = u x + (1-u) y.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .quandles import ActionError, FiniteQuandle, QuandleAction, union_with_actions


class OrderSymbol(enum.Enum):
    LT = "<"
    GT = ">"
    EQ = "="
    NONUNIFORM = "?"

    def __str__(self):
        return self.value


LT, GT, EQ, NONUNIFORM = OrderSymbol.LT, OrderSymbol.GT, OrderSymbol.EQ, OrderSymbol.NONUNIFORM

ADMISSIBLE_TYPES = frozenset({(LT, LT, EQ, EQ), (LT, LT, LT, GT), (LT, LT, GT, LT), (GT, GT, LT, LT)})


def compare(a, b) -> OrderSymbol:
    return LT if a < b else GT if a > b else EQ


def format_type(t: Sequence[OrderSymbol]) -> str:
    return "(" + ",".join(s.value for s in t) + ")"


def is_uniform(t) -> bool:
    return NONUNIFORM not in t


# ---------------------------------------------------------------- finite orders


@dataclass(frozen=True, eq=False)
class FiniteOrder:
    """``ranking[x]`` is the position of element ``x`` (0 = smallest)."""

    ranking: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.ranking, dtype=np.int64)
        if r.ndim != 1 or sorted(r.tolist()) != list(range(r.size)):
            raise ValueError("ranking must be a permutation of 0..n-1")
        object.__setattr__(self, "ranking", r)

    @classmethod
    def from_sequence(cls, elements) -> "FiniteOrder":
        """Order listing ``elements`` from smallest to largest."""
        return cls(np.argsort(np.asarray(elements)))

    @classmethod
    def parse(cls, text: str) -> "FiniteOrder":
        return cls(np.array([int(t) for t in text.split(",") if t.strip()]))

    def sequence(self) -> list:
        return np.argsort(self.ranking).tolist()

    def cmp(self, x: int, y: int) -> OrderSymbol:
        return compare(self.ranking[x], self.ranking[y])

    def __eq__(self, other):
        return isinstance(other, FiniteOrder) and np.array_equal(self.ranking, other.ranking)

    def __str__(self):
        return ",".join(map(str, self.ranking.tolist()))


def classify_order(Q: FiniteQuandle, order: FiniteOrder) -> tuple:
    """Type quadruple over all x < y and all z:
    (x*z vs y*z, x*~z vs y*~z, z*x vs z*y, z*~x vs z*~y)."""
    r = order.ranking
    T, D = Q.table, Q.dual
    x, y = np.nonzero(r[:, None] < r[None, :])
    if x.size == 0:
        # singleton: every comparison is vacuous; report the trivial type
        return (LT, LT, EQ, EQ)
    pairs = [
        (r[T[x, :]], r[T[y, :]]),
        (r[D[x, :]], r[D[y, :]]),
        (r[T[:, x]].T, r[T[:, y]].T),
        (r[D[:, x]].T, r[D[:, y]].T),
    ]
    out = []
    for a, b in pairs:
        seen = set(np.sign(b.astype(np.int64) - a.astype(np.int64)).ravel().tolist())
        if len(seen) != 1:
            out.append(NONUNIFORM)
        else:
            out.append({1: LT, -1: GT, 0: EQ}[seen.pop()])
    return tuple(out)


@dataclass
class OrderSearchResult:
    side: str
    count: int
    witness: FiniteOrder | None

    def as_dict(self) -> dict:
        return {
            "side": self.side,
            "count": self.count,
            "witness_order": None if self.witness is None else self.witness.ranking.tolist(),
        }


MAX_SEARCH_SIZE = 8


def search_order(Q: FiniteQuandle, side: str = "right") -> OrderSearchResult:
    """Brute force over all n! linear orders; returns the number of
    ``side``-invariant orders and the first one found."""
    if side not in kernels.SIDES:
        raise ValueError(f"side must be one of {sorted(kernels.SIDES)}")
    n = Q.size
    if n > MAX_SEARCH_SIZE:
        raise ValueError(f"order search is limited to n <= {MAX_SEARCH_SIZE} (got {n})")
    perms = _permutations(n)
    count, first = kernels.order_search(Q.table, perms, kernels.SIDES[side])
    witness = FiniteOrder.from_sequence(perms[first]) if first >= 0 else None
    return OrderSearchResult(side, count, witness)


_PERM_CACHE: dict = {}


def _permutations(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        arr = np.fromiter((i for p in permutations(range(n)) for i in p), dtype=np.int64, count=factorial(n) * n)
        _PERM_CACHE[n] = arr.reshape(factorial(n), n)
    return _PERM_CACHE[n]


def is_side_invariant(Q: FiniteQuandle, order: FiniteOrder, side: str = "right") -> bool:
    perms = np.array([order.sequence()], dtype=np.int64)
    return kernels.order_search(Q.table, perms, kernels.SIDES[side])[0] == 1


# ---------------------------------------------------------------- rational Alexander quandles


@dataclass(frozen=True)
class RationalAlexanderQuandle:
    u: Fraction

    def __post_init__(self):
        u = Fraction(self.u)
        if u == 0:
            raise ValueError("u must be non-zero")
        object.__setattr__(self, "u", u)

    def op(self, x, y):
        return self.u * x + (1 - self.u) * y

    def dual_op(self, x, y):
        return x / self.u + (1 - 1 / self.u) * y

    def act(self, x, e, y):
        return self.op(x, y) if e > 0 else self.dual_op(x, y)


def alexander_classify(u) -> tuple:
    """Order type of the usual order on Alex(Q, x -> u x)."""
    u = Fraction(u)
    if u == 0:
        raise ValueError("u must be non-zero")
    if u == 1:
        return (LT, LT, EQ, EQ)
    if 0 < u < 1:
        return (LT, LT, LT, GT)
    if u > 1:
        return (LT, LT, GT, LT)
    return (GT, GT, LT, LT)


DEFAULT_SEED = 20240601
RATIONAL_BOUND = 10**6


def random_rational(rng: random.Random, bound: int = RATIONAL_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_pair(rng: random.Random) -> tuple:
    """Two distinct rationals, smaller first."""
    while True:
        x, y = random_rational(rng), random_rational(rng)
        if x != y:
            return (x, y) if x < y else (y, x)


@dataclass
class SampleReport:
    u: Fraction
    trials: int
    seed: int
    type: tuple
    violations: list = field(default_factory=list)
    sandwich_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "u": str(self.u),
            "trials": self.trials,
            "seed": self.seed,
            "type": [s.value for s in self.type],
            "violations": [[str(v) if isinstance(v, Fraction) else v for v in w] for w in self.violations],
            "sandwich_checked": self.sandwich_checked,
        }


def alexander_sample_check(u, trials: int = 10_000, seed: int = DEFAULT_SEED) -> SampleReport:
    """Sample exact triples x < y, z and test each slot of the predicted type.

    For 0 < u < 1 the two sandwich chains are checked on every sampled pair.
    A violation is recorded as ``(slot, x, y, z)`` or ``("sandwich", x, y)``.
    """
    Q = RationalAlexanderQuandle(u)
    expected = alexander_classify(Q.u)
    rng = random.Random(seed)
    report = SampleReport(Q.u, trials, seed, expected)
    biordered = 0 < Q.u < 1
    for _ in range(trials):
        x, y = random_pair(rng)
        z = random_rational(rng)
        got = (
            compare(Q.op(x, z), Q.op(y, z)),
            compare(Q.dual_op(x, z), Q.dual_op(y, z)),
            compare(Q.op(z, x), Q.op(z, y)),
            compare(Q.dual_op(z, x), Q.dual_op(z, y)),
        )
        for slot, (g, want) in enumerate(zip(got, expected), 1):
            if g != want:
                report.violations.append((slot, x, y, z))
        if biordered:
            report.sandwich_checked += 1
            if sandwich(x, y, Q.u).symbol is None:
                report.violations.append(("sandwich", x, y))
    return report


def dual_commutation_failures(u, trials: int = 10_000, seed: int = DEFAULT_SEED) -> list:
    """Sampled pairs where x*~y != y*~x (the quasi-commutativity identity)."""
    Q = RationalAlexanderQuandle(u)
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        x, y = random_pair(rng)
        if Q.dual_op(x, y) != Q.dual_op(y, x):
            bad.append((x, y))
    return bad


@dataclass(frozen=True)
class SandwichVerdict:
    symbol: OrderSymbol | None  # common direction of both chains, None if they fail
    chain1: tuple
    chain2: tuple


def _direction(chain) -> OrderSymbol | None:
    steps = {compare(a, b) for a, b in zip(chain, chain[1:])}
    return steps.pop() if len(steps) == 1 and EQ not in steps else None


def sandwich(x, y, u) -> SandwichVerdict:
    """Check x*~y ◇ x ◇ x*y ◇ y ◇ y*~x and x*~y ◇ x ◇ y*x ◇ y ◇ y*~x
    with one common strict direction ◇."""
    Q = RationalAlexanderQuandle(u)
    if not 0 < Q.u < 1:
        raise ValueError("sandwich chains need 0 < u < 1")
    x, y = Fraction(x), Fraction(y)
    if x == y:
        raise ValueError("x and y must be distinct")
    c1 = (Q.dual_op(x, y), x, Q.op(x, y), y, Q.dual_op(y, x))
    c2 = (Q.dual_op(x, y), x, Q.op(y, x), y, Q.dual_op(y, x))
    d1, d2 = _direction(c1), _direction(c2)
    return SandwichVerdict(d1 if d1 == d2 else None, c1, c2)


@dataclass
class FaithfulReport:
    u: Fraction
    trials: int
    seed: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def faithful_action_check(u, trials: int = 1000, seed: int = DEFAULT_SEED) -> FaithfulReport:
    """On Alex(Q, u) with u > 0, u != 1: every symmetry S_q preserves the order
    and distinct q give distinct symmetries."""
    Q = RationalAlexanderQuandle(u)
    if Q.u <= 0 or Q.u == 1:
        raise ValueError("needs u > 0 and u != 1 (right-ordered and semi-latin)")
    rng = random.Random(seed)
    rep = FaithfulReport(Q.u, trials, seed)
    for _ in range(trials):
        q = random_rational(rng)
        x, y = random_pair(rng)
        if not Q.op(x, q) < Q.op(y, q):
            rep.violations.append(("order", q, x, y))
        p = random_rational(rng)
        if p == q:
            continue
        # any point separates S_p and S_q; test the sampled one
        if Q.op(x, p) == Q.op(x, q):
            rep.violations.append(("faithful", p, q, x))
    return rep


# ---------------------------------------------------------------- combining orders

Comparator = Callable[[object, object], OrderSymbol]


def lex_product_order(comparators: Sequence[Comparator]) -> Comparator:
    """Compare tuples at the first index where they differ."""

    def cmp(a, b):
        for c, x, y in zip(comparators, a, b):
            s = c(x, y)
            if s is not EQ:
                return s
        return EQ

    return cmp


def right_invariance_failures(op, cmp: Comparator, triples) -> list:
    """Triples (x, y, z) with x < y but not x*z < y*z."""
    bad = []
    for x, y, z in triples:
        s = cmp(x, y)
        if s is EQ:
            continue
        if s is GT:
            x, y = y, x
        if cmp(op(x, z), op(y, z)) is not LT:
            bad.append((x, y, z))
    return bad


def _check_order_preserving(action: QuandleAction, order: FiniteOrder, label: str):
    r = order.ranking
    seq = order.sequence()
    for x in range(action.source.size):
        img = r[action.perms[x][seq]]
        bad = np.flatnonzero(np.diff(img) <= 0)
        if bad.size:
            k = int(bad[0])
            raise ActionError(f"{label} is not order-preserving", (x, seq[k], seq[k + 1]))


def union_order(Q1: FiniteQuandle, order1: FiniteOrder, Q2: FiniteQuandle, order2: FiniteOrder,
                sigma: QuandleAction, tau: QuandleAction) -> tuple:
    """Order on Q1 ⊔ Q2 with all of Q1 below Q2.  Returns the union quandle
    and the order; raises :class:`ActionError` if an action does not preserve
    the given orders."""
    _check_order_preserving(sigma, order2, "sigma")
    _check_order_preserving(tau, order1, "tau")
    Q = union_with_actions(Q1, Q2, sigma, tau)
    ranking = np.concatenate([order1.ranking, order2.ranking + Q1.size])
    return Q, FiniteOrder(ranking)
