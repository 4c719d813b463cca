"""Finite quandles as operation tables.

Elements are ``0..n-1``; ``table[x, y]`` is ``x*y`` and ``dual[x, y]`` is
``x*^-1 y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .groups import FiniteGroup


class AxiomViolation(NamedTuple):
    axiom: str  # "Q1", "Q2" or "Q3"
    witness: tuple


class QuandleAxiomError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = ", ".join(f"{v.axiom}{v.witness}" for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"not a quandle: {head}{more}")


class ActionError(ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: witness {witness}")


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    table: np.ndarray
    dual: np.ndarray
    name: str = ""

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def op(self, x: int, y: int, e: int = 1) -> int:
        return int(self.table[x, y] if e > 0 else self.dual[x, y])

    def column(self, y: int) -> np.ndarray:
        """The symmetry S_y: x -> x*y."""
        return self.table[:, y]

    def is_trivial(self) -> bool:
        return bool(np.array_equal(self.table, np.repeat(np.arange(self.size)[:, None], self.size, axis=1)))

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteQuandle({self.name or 'Q'}, size={self.size})"


def _as_table(table) -> np.ndarray:
    T = np.asarray(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise ValueError(f"operation table must be non-empty and square, got shape {T.shape}")
    if not np.issubdtype(T.dtype, np.integer):
        raise ValueError("operation table entries must be integers")
    n = T.shape[0]
    if T.min() < 0 or T.max() >= n:
        raise ValueError(f"operation table entries must lie in 0..{n - 1}")
    return np.ascontiguousarray(T, dtype=np.int64)


def axiom_violations(table) -> list[AxiomViolation]:
    """Every failure of Q1-Q3, each with a witness.

    Q1 witness ``(x,)``; Q2 witness ``(x1, x2, y)`` with ``x1*y == x2*y``;
    Q3 witness ``(x, y, z)``.
    """
    T = _as_table(table)
    q1, q2, q3 = kernels.axiom_masks(T)
    out = [AxiomViolation("Q1", (int(x),)) for x in np.flatnonzero(q1)]
    for y in np.flatnonzero(q2):
        col = T[:, y]
        first = {}
        for x, v in enumerate(col.tolist()):
            if v in first:
                out.append(AxiomViolation("Q2", (first[v], x, int(y))))
                break
            first[v] = x
    out.extend(AxiomViolation("Q3", tuple(int(i) for i in w)) for w in np.argwhere(q3))
    return out


def dual_table(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    D = np.empty_like(T)
    rows = np.arange(n)
    for y in range(n):
        D[T[:, y], y] = rows
    return D


def validate_quandle(table, name: str = "") -> FiniteQuandle:
    """Return the quandle on ``table`` or raise :class:`QuandleAxiomError`
    listing every violation."""
    T = _as_table(table)
    bad = axiom_violations(T)
    if bad:
        raise QuandleAxiomError(bad)
    return FiniteQuandle(T, dual_table(T), name)


def is_quandle(table) -> bool:
    try:
        T = _as_table(table)
    except ValueError:
        return False
    return bool(kernels.valid_mask(T[None])[0])


def enumerate_quandles(n: int) -> list[FiniteQuandle]:
    """All valid operation tables of size ``n`` (labelled, not up to isomorphism)."""
    if n > 3:
        raise ValueError("exhaustive enumeration is limited to n <= 3")
    tables = kernels.all_tables(n)
    keep = kernels.valid_mask(tables)
    return [FiniteQuandle(T, dual_table(T), f"enum{n}#{i}") for i, T in enumerate(tables[keep])]


# ---------------------------------------------------------------- constructions


def trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("quandle size must be >= 1")
    T = np.repeat(np.arange(n, dtype=np.int64)[:, None], n, axis=1)
    return FiniteQuandle(T, T.copy(), f"T{n}")


def dihedral(n: int) -> FiniteQuandle:
    """R_n: i*j = 2j - i mod n."""
    if n < 1:
        raise ValueError("dihedral quandle needs n >= 1")
    ar = np.arange(n, dtype=np.int64)
    return validate_quandle((2 * ar[None, :] - ar[:, None]) % n, f"R{n}")


def conj(G: FiniteGroup, n: int = 1) -> FiniteQuandle:
    """x*y = y^-n x y^n."""
    powers = np.array([G.power(y, n) for y in range(G.size)], dtype=np.int64)
    C = G.cayley
    # y^-n x y^n
    left = G.inverse[powers]
    T = C[C[left[None, :], np.arange(G.size)[:, None]], powers[None, :]]
    return validate_quandle(T, f"Conj{n}({G.name})")


def core(G: FiniteGroup) -> FiniteQuandle:
    """x*y = y x^-1 y."""
    C = G.cayley
    ar = np.arange(G.size)
    T = C[C[ar[None, :], G.inverse[ar][:, None]], ar[None, :]]
    return validate_quandle(T, f"Core({G.name})")


def alexander(G: FiniteGroup, phi) -> FiniteQuandle:
    """x*y = phi(x y^-1) y for an automorphism ``phi`` given as an index array."""
    phi = np.asarray(phi, dtype=np.int64)
    if not G.is_automorphism(phi):
        raise ValueError("phi is not an automorphism of G")
    C = G.cayley
    ar = np.arange(G.size)
    T = C[phi[C[ar[:, None], G.inverse[ar][None, :]]], ar[None, :]]
    return validate_quandle(T, f"Alex({G.name})")


def product(Q1: FiniteQuandle, Q2: FiniteQuandle) -> FiniteQuandle:
    """Componentwise operation; (i, j) is stored at index i*|Q2| + j."""
    n2 = Q2.size
    T = (Q1.table[:, None, :, None] * n2 + Q2.table[None, :, None, :])
    T = T.reshape(Q1.size * n2, Q1.size * n2)
    return validate_quandle(T, f"{Q1.name}x{Q2.name}")


# ---------------------------------------------------------------- actions


def _is_automorphism(Q: FiniteQuandle, p: np.ndarray) -> bool:
    if sorted(p.tolist()) != list(range(Q.size)):
        return False
    return bool(np.array_equal(p[Q.table], Q.table[p[:, None], p[None, :]]))


@dataclass(frozen=True, eq=False)
class QuandleAction:
    """A homomorphism ``source -> Conj_{-1}(Aut(target))``; row ``x`` of
    ``perms`` is the permutation attached to ``x``."""

    source: FiniteQuandle
    target: FiniteQuandle
    perms: np.ndarray

    def __post_init__(self):
        P = np.ascontiguousarray(self.perms, dtype=np.int64)
        object.__setattr__(self, "perms", P)
        if P.shape != (self.source.size, self.target.size):
            raise ActionError(f"action table must have shape {(self.source.size, self.target.size)}")
        for x in range(self.source.size):
            if not _is_automorphism(self.target, P[x]):
                raise ActionError("image is not an automorphism of the target", (x,))
        inv = np.argsort(P, axis=1)
        S = self.source.table
        for x in range(self.source.size):
            for y in range(self.source.size):
                # map(x*y) = map(y) o map(x) o map(y)^-1
                rhs = P[y][P[x][inv[y]]]
                if not np.array_equal(P[S[x, y]], rhs):
                    raise ActionError("not a homomorphism into Conj_-1(Aut)", (x, y))

    def __call__(self, x: int) -> np.ndarray:
        return self.perms[x]

    def is_trivial(self) -> bool:
        return bool(np.all(self.perms == np.arange(self.target.size)[None, :]))


def trivial_action(source: FiniteQuandle, target: FiniteQuandle) -> QuandleAction:
    return QuandleAction(source, target, np.tile(np.arange(target.size), (source.size, 1)))


def inner_action(Q: FiniteQuandle) -> QuandleAction:
    """q -> S_q, the action of Q on itself."""
    return QuandleAction(Q, Q, Q.table.T.copy())


def union_with_actions(Q1: FiniteQuandle, Q2: FiniteQuandle, sigma: QuandleAction, tau: QuandleAction) -> FiniteQuandle:
    """Quandle on Q1 ⊔ Q2 (Q2 shifted by |Q1|) twisted by ``sigma: Q1 -> Aut Q2``
    and ``tau: Q2 -> Aut Q1``.  Raises :class:`ActionError` with a witness
    ``(x, y, z)`` if a compatibility condition fails."""
    if sigma.source != Q1 or sigma.target != Q2 or tau.source != Q2 or tau.target != Q1:
        raise ActionError("sigma must act Q1 -> Aut(Q2) and tau Q2 -> Aut(Q1)")
    n1, n2 = Q1.size, Q2.size
    s, t = sigma.perms, tau.perms
    # tau(z)(x) * y == tau(sigma(y)(z))(x * y)
    for x in range(n1):
        for y in range(n1):
            for z in range(n2):
                if Q1.table[t[z, x], y] != t[s[y, z], Q1.table[x, y]]:
                    raise ActionError("compatibility condition (1) fails", (x, y, z))
    # sigma(z)(x) o y == sigma(tau(y)(z))(x o y)
    for x in range(n2):
        for y in range(n2):
            for z in range(n1):
                if Q2.table[s[z, x], y] != s[t[y, z], Q2.table[x, y]]:
                    raise ActionError("compatibility condition (2) fails", (x, y, z))
    T = np.empty((n1 + n2, n1 + n2), dtype=np.int64)
    T[:n1, :n1] = Q1.table
    T[n1:, n1:] = Q2.table + n1
    T[:n1, n1:] = t.T  # x in Q1, y in Q2: tau(y)(x)
    T[n1:, :n1] = s.T + n1  # x in Q2, y in Q1: sigma(y)(x)
    return validate_quandle(T, f"{Q1.name}+{Q2.name}")


def disjoint_union(Q1: FiniteQuandle, Q2: FiniteQuandle) -> FiniteQuandle:
    return union_with_actions(Q1, Q2, trivial_action(Q1, Q2), trivial_action(Q2, Q1))


# ---------------------------------------------------------------- properties


@dataclass(frozen=True)
class PropertyReport:
    involutory: bool
    commutative: bool
    quasi_commutative: bool
    latin: bool
    semi_latin: bool
    connected: bool
    simple: bool
    orbits: tuple
    inner_group_order: int

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["orbits"] = [list(b) for b in self.orbits]
        return d


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def blocks(self):
        groups = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return tuple(tuple(b) for b in sorted(groups.values()))


def orbits(Q: FiniteQuandle) -> tuple:
    """Orbits of Inn(Q), as sorted tuples."""
    uf = _UnionFind(Q.size)
    for x in range(Q.size):
        for y in range(Q.size):
            uf.union(x, int(Q.table[x, y]))
    return uf.blocks()


def congruence_closure(Q: FiniteQuandle, a: int, b: int) -> tuple:
    """Blocks of the smallest congruence identifying ``a`` and ``b``."""
    T = Q.table
    n = Q.size
    uf = _UnionFind(n)
    uf.union(a, b)
    changed = True
    while changed:
        changed = False
        roots = [uf.find(x) for x in range(n)]
        for x in range(n):
            rx = roots[x]
            for y in range(n):
                ry = roots[y]
                xy = int(T[x, y])
                changed |= uf.union(xy, int(T[rx, y]))
                changed |= uf.union(xy, int(T[x, ry]))
    return uf.blocks()


def is_simple(Q: FiniteQuandle) -> bool:
    """Every homomorphic image is injective or constant.

    Size 1 counts as simple; so does the 2-element trivial quandle.  Trivial
    quandles of size >= 3 are not (the map collapsing two points is neither).
    """
    n = Q.size
    for a in range(n):
        for b in range(a + 1, n):
            if len(congruence_closure(Q, a, b)) != 1:
                return False
    return True


def inner_group_order(Q: FiniteQuandle, limit: int = 2_000_000) -> int:
    """|Inn(Q)|, by closing the column permutations under composition."""
    gens = {tuple(Q.table[:, y].tolist()) for y in range(Q.size)}
    identity = tuple(range(Q.size))
    gens.discard(identity)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > limit:
                        raise ValueError("inner automorphism group larger than limit")
        frontier = nxt
    return len(seen)


def property_report(Q: FiniteQuandle) -> PropertyReport:
    T, D = Q.table, Q.dual
    n = Q.size
    involutory = bool(np.array_equal(T, D))
    commutative = bool(np.array_equal(T, T.T))
    quasi = bool(np.all((T == T.T) | (T == D.T) | (D == T.T) | (D == D.T)))
    semi_latin = all(len(set(T[x].tolist())) == n for x in range(n))
    # rows are maps of a finite set into itself, so injective == bijective
    latin = semi_latin
    orb = orbits(Q)
    return PropertyReport(
        involutory=involutory,
        commutative=commutative,
        quasi_commutative=quasi,
        latin=latin,
        semi_latin=semi_latin,
        connected=len(orb) == 1,
        simple=is_simple(Q),
        orbits=orb,
        inner_group_order=inner_group_order(Q),
    )


def quandle_catalog(max_size: int = 5) -> list[FiniteQuandle]:
    """Small named quandles: trivial, dihedral, core, conjugation and Alexander."""
    from .groups import group_catalog, multiplication_automorphism
    from math import gcd

    out = [trivial(n) for n in range(1, max_size + 1)]
    out += [dihedral(n) for n in range(3, max_size + 1)]
    seen = {q.table.tobytes() for q in out}
    candidates = []
    for G in group_catalog(max_size):
        candidates.append(core(G))
        for k in (-2, -1, 1, 2):
            candidates.append(conj(G, k))
        if G.name.startswith("Z"):
            for k in range(2, G.size):
                if gcd(k, G.size) == 1:
                    Q = alexander(G, multiplication_automorphism(G.size, k))
                    candidates.append(FiniteQuandle(Q.table, Q.dual, f"Alex({G.name},x{k})"))
    for Q in candidates:
        key = Q.table.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(Q)
    return out
