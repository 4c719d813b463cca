"""Finite groups as Cayley tables with the identity at index 0."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np


class GroupAxiomError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: np.ndarray
    inverse: np.ndarray
    name: str = ""
    labels: tuple = field(default=(), repr=False)

    @property
    def size(self) -> int:
        return self.cayley.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def is_automorphism(self, phi) -> bool:
        phi = np.asarray(phi, dtype=np.int64)
        if phi.shape != (self.size,) or sorted(phi.tolist()) != list(range(self.size)):
            return False
        C = self.cayley
        return bool(np.array_equal(phi[C], C[phi[:, None], phi[None, :]]))

    def __repr__(self):
        return f"FiniteGroup({self.name or 'G'}, order={self.size})"


def group_from_table(table, name: str = "") -> FiniteGroup:
    """Check the group axioms on ``table`` (identity must be element 0)."""
    C = np.asarray(table, dtype=np.int64)
    if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape[0] == 0:
        raise GroupAxiomError("Cayley table must be a non-empty square array")
    n = C.shape[0]
    if C.min() < 0 or C.max() >= n:
        raise GroupAxiomError("Cayley table entry out of range")
    ar = np.arange(n)
    if not (np.array_equal(C[0], ar) and np.array_equal(C[:, 0], ar)):
        raise GroupAxiomError("element 0 is not the identity")
    if not np.array_equal(C[C[:, :, None], ar[None, None, :]], C[ar[:, None, None], C[None, :, :]]):
        raise GroupAxiomError("multiplication is not associative")
    inv = np.full(n, -1, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(C[g] == 0)
        if hits.size != 1 or C[hits[0], g] != 0:
            raise GroupAxiomError(f"element {g} has no two-sided inverse")
        inv[g] = hits[0]
    return FiniteGroup(C, inv, name)


def group_from_elements(elements, mul, name: str = "") -> FiniteGroup:
    """Tabulate a group given hashable elements (identity first) and a product."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    C = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            C[i, j] = index[mul(a, b)]
    g = group_from_table(C, name)
    return FiniteGroup(g.cayley, g.inverse, name, tuple(elements))


def generate(gens, mul, identity) -> list:
    """Closure of ``gens`` under ``mul``, identity first, breadth-first."""
    out = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    nxt.append(b)
        frontier = nxt
    return out


def _compose(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def permutation_group(gens, name: str = "") -> FiniteGroup:
    gens = [tuple(g) for g in gens]
    identity = tuple(range(len(gens[0])))
    return group_from_elements(generate(gens, _compose, identity), _compose, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, (-ar) % n, f"Z{n}", tuple(range(n)))


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def symmetric(k: int) -> FiniteGroup:
    elements = sorted(permutations(range(k)))  # identity sorts first
    return group_from_elements(elements, _compose, f"S{k}")


def alternating(k: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
        return inv % 2 == 0

    elements = [p for p in sorted(permutations(range(k))) if even(p)]
    return group_from_elements(elements, _compose, f"A{k}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element (k, f) is r^k s^f."""

    def mul(a, b):
        k, f = a
        l, g = b
        return ((k + (-l if f else l)) % n, f ^ g)

    elements = [(k, f) for f in (0, 1) for k in range(n)]
    return group_from_elements(elements, mul, f"D{n}")


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m: a^(2m)=1, x^2=a^m, x a x^-1 = a^-1.  Q8 is m=2."""

    def mul(p, q):
        k, j = p
        l, i = q
        if j == 0:
            return ((k + l) % (2 * m), i)
        if i == 0:
            return ((k - l) % (2 * m), 1)
        return ((k - l + m) % (2 * m), 0)

    elements = [(k, j) for j in (0, 1) for k in range(2 * m)]
    return group_from_elements(elements, mul, "Q8" if m == 2 else f"Dic{m}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    a, b = G.size, H.size
    C = np.empty((a * b, a * b), dtype=np.int64)
    for (g1, h1), (g2, h2) in product(product(range(a), range(b)), repeat=2):
        C[g1 * b + h1, g2 * b + h2] = G.cayley[g1, g2] * b + H.cayley[h1, h2]
    inv = np.array([G.inverse[g] * b + H.inverse[h] for g in range(a) for h in range(b)], dtype=np.int64)
    return FiniteGroup(C, inv, f"{G.name}x{H.name}")


def multiplication_automorphism(n: int, k: int) -> np.ndarray:
    """x -> k x on Z_n; an automorphism iff gcd(k, n) == 1."""
    return (np.arange(n) * k) % n


def inversion_map(G: FiniteGroup) -> np.ndarray:
    return G.inverse.copy()


def group_catalog(max_order: int = 12) -> list[FiniteGroup]:
    """Every group of order <= 12 up to isomorphism (there are 24)."""
    out = [cyclic(n) for n in range(1, max_order + 1)]
    extra = [
        direct_product(cyclic(2), cyclic(2)),
        symmetric(3),
        direct_product(cyclic(2), cyclic(4)),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        dihedral_group(4),
        dicyclic(2),
        direct_product(cyclic(3), cyclic(3)),
        dihedral_group(5),
        direct_product(cyclic(2), cyclic(6)),
        dihedral_group(6),
        alternating(4),
        dicyclic(3),
    ]
    out.extend(g for g in extra if g.size <= max_order)
    return out
