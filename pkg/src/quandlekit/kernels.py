"""Hot integer-table kernels.

Every kernel exists twice: a loop version compiled with numba's ``njit`` and a
vectorised numpy version.  The module-level names dispatch on
``_accel.USE_NUMBA``; both variants stay importable so tests and the
benchmark can compare them directly.

Tables are ``int64`` arrays, row = left argument.
"""
import numpy as np

from . import _accel
from ._accel import njit

RIGHT, LEFT, BI = 0, 1, 2
SIDES = {"right": RIGHT, "left": LEFT, "bi": BI}


# --------------------------------------------------------------------------
# axiom masks


@njit(cache=True)
def _axiom_masks_loops(T):
    n = T.shape[0]
    q1 = np.zeros(n, dtype=np.bool_)
    q2 = np.zeros(n, dtype=np.bool_)
    q3 = np.zeros((n, n, n), dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        if T[x, x] != x:
            q1[x] = True
    for y in range(n):
        seen[:] = False
        for x in range(n):
            v = T[x, y]
            if seen[v]:
                q2[y] = True
            seen[v] = True
    for x in range(n):
        for y in range(n):
            xy = T[x, y]
            for z in range(n):
                if T[xy, z] != T[T[x, z], T[y, z]]:
                    q3[x, y, z] = True
    return q1, q2, q3


def _axiom_masks_numpy(T):
    n = T.shape[0]
    ar = np.arange(n)
    q1 = T[ar, ar] != ar
    s = np.sort(T, axis=0)
    q2 = np.any(s != ar[:, None], axis=0)
    lhs = T[T[:, :, None], ar[None, None, :]]
    rhs = T[T[:, None, :], T[None, :, :]]
    q3 = lhs != rhs
    return q1, q2, q3


def axiom_masks(T):
    """Per-axiom failure masks ``(q1[x], q2[column y], q3[x, y, z])``."""
    T = np.ascontiguousarray(T, dtype=np.int64)
    if _accel.USE_NUMBA:
        return _axiom_masks_loops(T)
    return _axiom_masks_numpy(T)


# --------------------------------------------------------------------------
# batch validity (used for exhaustive enumeration)


@njit(cache=True)
def _valid_mask_loops(tables):
    N, n, _ = tables.shape
    out = np.ones(N, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    for t in range(N):
        T = tables[t]
        ok = True
        for x in range(n):
            if T[x, x] != x:
                ok = False
                break
        if ok:
            for y in range(n):
                seen[:] = False
                for x in range(n):
                    v = T[x, y]
                    if seen[v]:
                        ok = False
                        break
                    seen[v] = True
                if not ok:
                    break
        if ok:
            for x in range(n):
                for y in range(n):
                    for z in range(n):
                        if T[T[x, y], z] != T[T[x, z], T[y, z]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
        out[t] = ok
    return out


def _valid_mask_numpy(tables):
    N, n, _ = tables.shape
    ar = np.arange(n)
    b = np.arange(N)[:, None, None, None]
    q1 = np.all(tables[:, ar, ar] == ar, axis=1)
    q2 = np.all(np.sort(tables, axis=1) == ar[None, :, None], axis=(1, 2))
    x = ar[:, None, None]
    y = ar[None, :, None]
    z = ar[None, None, :]
    Txy = tables[:, x, y]
    Txz = tables[:, x, z]
    Tyz = tables[:, y, z]
    lhs = tables[b, Txy, np.broadcast_to(z, (n, n, n))[None]]
    rhs = tables[b, Txz, Tyz]
    q3 = np.all((lhs == rhs).reshape(N, -1), axis=1)
    return q1 & q2 & q3


def valid_mask(tables):
    """Boolean mask over a stack of ``(N, n, n)`` candidate tables."""
    tables = np.ascontiguousarray(tables, dtype=np.int64)
    if _accel.USE_NUMBA:
        return _valid_mask_loops(tables)
    return _valid_mask_numpy(tables)


def all_tables(n):
    """Every ``n x n`` table with entries in ``0..n-1`` (``n**(n*n)`` rows)."""
    cells = n * n
    count = n**cells
    if count > 5_000_000:
        raise ValueError(f"{count} candidate tables for n={n} is too many")
    codes = np.arange(count, dtype=np.int64)
    digits = np.empty((count, cells), dtype=np.int64)
    for c in range(cells - 1, -1, -1):
        digits[:, c] = codes % n
        codes //= n
    return digits.reshape(count, n, n)


# --------------------------------------------------------------------------
# order search


@njit(cache=True)
def _order_search_loops(T, perms, side):
    P, n = perms.shape
    rank = np.empty(n, dtype=np.int64)
    count = 0
    first = -1
    for p in range(P):
        for k in range(n):
            rank[perms[p, k]] = k
        ok = True
        if side == 0 or side == 2:
            for z in range(n):
                for k in range(n - 1):
                    if rank[T[perms[p, k], z]] >= rank[T[perms[p, k + 1], z]]:
                        ok = False
                        break
                if not ok:
                    break
        if ok and (side == 1 or side == 2):
            for z in range(n):
                for k in range(n - 1):
                    if rank[T[z, perms[p, k]]] >= rank[T[z, perms[p, k + 1]]]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            if first < 0:
                first = p
            count += 1
    return count, first


def _monotone(maps, perms, rank):
    # maps[z] is the translation applied to every element; ranks of images must increase along perms
    P, n = perms.shape
    img = maps[:, perms]  # (n_z, P, n)
    r = rank[np.arange(P)[None, :, None], img]
    return np.all(np.diff(r, axis=2) > 0, axis=(0, 2))


def _order_search_numpy(T, perms, side, chunk=8192):
    P, n = perms.shape
    count = 0
    first = -1
    right_maps = np.ascontiguousarray(T.T)  # row z: x -> x*z
    left_maps = T  # row z: y -> z*y
    for start in range(0, P, chunk):
        block = perms[start:start + chunk]
        rank = np.argsort(block, axis=1)
        ok = np.ones(block.shape[0], dtype=bool)
        if side in (RIGHT, BI):
            ok &= _monotone(right_maps, block, rank)
        if side in (LEFT, BI):
            ok &= _monotone(left_maps, block, rank)
        hits = np.flatnonzero(ok)
        if first < 0 and hits.size:
            first = start + int(hits[0])
        count += int(hits.size)
    return count, first


def order_search(T, perms, side):
    """Count rankings in ``perms`` (row = elements listed smallest first) that
    are invariant on the requested side.  Returns ``(count, first_row)``."""
    T = np.ascontiguousarray(T, dtype=np.int64)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if _accel.USE_NUMBA:
        c, f = _order_search_loops(T, perms, side)
        return int(c), int(f)
    return _order_search_numpy(T, perms, side)


# --------------------------------------------------------------------------
# coloring counts
#
# A presentation is compiled to flat arrays: word w has base generator
# ``base[w]`` and tail letters ``tail_gen/tail_sign[start[w]:start[w+1]]``.
# Relation r compares words ``lhs[r]`` and ``rhs[r]``.


@njit(cache=True)
def _count_colorings_loops(T, D, k, base, start, tail_gen, tail_sign, lhs, rhs, lo, hi):
    q = T.shape[0]
    assign = np.zeros(k, dtype=np.int64)
    nw = base.shape[0]
    vals = np.zeros(nw, dtype=np.int64)
    total = 0
    for code in range(lo, hi):
        c = code
        for g in range(k - 1, -1, -1):
            assign[g] = c % q
            c //= q
        for w in range(nw):
            v = assign[base[w]]
            for t in range(start[w], start[w + 1]):
                a = assign[tail_gen[t]]
                if tail_sign[t] > 0:
                    v = T[v, a]
                else:
                    v = D[v, a]
            vals[w] = v
        ok = True
        for r in range(lhs.shape[0]):
            if vals[lhs[r]] != vals[rhs[r]]:
                ok = False
                break
        if ok:
            total += 1
    return total


def _count_colorings_numpy(T, D, k, base, start, tail_gen, tail_sign, lhs, rhs, lo, hi, chunk=1 << 16):
    q = T.shape[0]
    total = 0
    for s in range(lo, hi, chunk):
        codes = np.arange(s, min(hi, s + chunk), dtype=np.int64)
        A = np.empty((codes.size, k), dtype=np.int64)
        c = codes.copy()
        for g in range(k - 1, -1, -1):
            A[:, g] = c % q
            c //= q
        vals = []
        for w in range(base.size):
            v = A[:, base[w]]
            for t in range(start[w], start[w + 1]):
                a = A[:, tail_gen[t]]
                v = T[v, a] if tail_sign[t] > 0 else D[v, a]
            vals.append(v)
        ok = np.ones(codes.size, dtype=bool)
        for r in range(lhs.size):
            ok &= vals[lhs[r]] == vals[rhs[r]]
        total += int(ok.sum())
    return total


def count_colorings(T, D, k, compiled, parts=1):
    """Count assignments of ``k`` generators into the quandle ``(T, D)`` that
    satisfy every compiled relation.  The mixed-radix code space may be split
    into ``parts`` contiguous ranges; the sum is identical to one pass."""
    T = np.ascontiguousarray(T, dtype=np.int64)
    D = np.ascontiguousarray(D, dtype=np.int64)
    q = T.shape[0]
    space = q**k
    bounds = np.linspace(0, space, parts + 1).astype(np.int64) if parts > 1 else np.array([0, space])
    fn = _count_colorings_loops if _accel.USE_NUMBA else _count_colorings_numpy
    total = 0
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        total += fn(T, D, k, *compiled, int(lo), int(hi))
    return int(total)
