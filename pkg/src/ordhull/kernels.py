"""Hot loops: class membership of many tables and brute-force envelopes.

Each kernel has a numba implementation (``*_numba``) and a pure-numpy one
(``*_numpy``); the unsuffixed name is bound according to
:data:`ordhull._backend.BACKEND`. Both paths are exact integer code and must
agree bit for bit.

Function tables are int64 arrays of completed-poset indices, one row per
function. Membership columns are ``HG, HGC, SUB, SUPER``.
"""
import numpy as np

from ._backend import HAVE_NUMBA, USE_NUMBA, njit
from .order import MASK_TABLE_LIMIT

CLASS_COLUMNS = ("HG", "HGC", "SUB", "SUPER")

_CHUNK_CELLS = 1 << 22


@njit
def membership_numba(tables, hx, hS, leq, member):
    K, nx = tables.shape
    nh = hx.shape[0]
    out = np.zeros((K, 4), dtype=np.bool_)
    for k in range(K):
        in_s = True
        for x in range(nx):
            if not member[tables[k, x]]:
                in_s = False
        hg = True
        sub = True
        sup = True
        for h in range(nh):
            for x in range(nx):
                a = tables[k, hx[h, x]]
                b = hS[h, tables[k, x]]
                if a != b:
                    hg = False
                if not leq[a, b]:
                    sub = False
                if not leq[b, a]:
                    sup = False
        out[k, 0] = hg and in_s
        out[k, 1] = hg
        out[k, 2] = sub
        out[k, 3] = sup
    return out


def membership_numpy(tables, hx, hS, leq, member):
    tables = np.asarray(tables, dtype=np.int64)
    K, nx = tables.shape
    nh = hx.shape[0]
    out = np.zeros((K, 4), dtype=bool)
    step = max(1, _CHUNK_CELLS // max(1, nh * nx))
    hidx = np.arange(nh)[None, :, None]
    for lo in range(0, K, step):
        t = tables[lo:lo + step]
        lhs = t[:, hx]                   # f(hx)
        rhs = hS[hidx, t[:, None, :]]    # h(h) f(x)
        hg = (lhs == rhs).all(axis=(1, 2))
        out[lo:lo + step, 1] = hg
        out[lo:lo + step, 0] = hg & member[t].all(axis=1)
        out[lo:lo + step, 2] = leq[lhs, rhs].all(axis=(1, 2))
        out[lo:lo + step, 3] = leq[rhs, lhs].all(axis=(1, 2))
    return out


@njit
def lower_envelope_numba(fs, cands, leq, join, bottom):
    F, nx = fs.shape
    K = cands.shape[0]
    out = np.empty((F, nx), dtype=np.int64)
    for i in range(F):
        for x in range(nx):
            out[i, x] = bottom
        for k in range(K):
            below = True
            for x in range(nx):
                if not leq[cands[k, x], fs[i, x]]:
                    below = False
                    break
            if below:
                for x in range(nx):
                    out[i, x] = join[out[i, x], cands[k, x]]
    return out


@njit
def upper_envelope_numba(fs, cands, leq, meet, top):
    F, nx = fs.shape
    K = cands.shape[0]
    out = np.empty((F, nx), dtype=np.int64)
    for i in range(F):
        for x in range(nx):
            out[i, x] = top
        for k in range(K):
            above = True
            for x in range(nx):
                if not leq[fs[i, x], cands[k, x]]:
                    above = False
                    break
            if above:
                for x in range(nx):
                    out[i, x] = meet[out[i, x], cands[k, x]]
    return out


def _envelope_numpy(fs, cands, dominated, op, unit, mask_table):
    fs = np.asarray(fs, dtype=np.int64)
    cands = np.asarray(cands, dtype=np.int64)
    F, nx = fs.shape
    K = cands.shape[0]
    out = np.full((F, nx), unit, dtype=np.int64)
    if K == 0 or F == 0:
        return out
    step = max(1, _CHUNK_CELLS // max(1, K * nx))
    if mask_table is not None:
        bits = np.left_shift(np.int64(1), cands)
        for lo in range(0, F, step):
            D = dominated(fs[lo:lo + step])                       # (f, K)
            masks = np.bitwise_or.reduce(np.where(D[:, :, None], bits[None], 0), axis=1)
            out[lo:lo + step] = mask_table[masks]
        return out
    for lo in range(0, F, step):
        D = dominated(fs[lo:lo + step])
        acc = out[lo:lo + step]
        for k in range(K):
            acc = np.where(D[:, k, None], op[acc, cands[k][None, :]], acc)
        out[lo:lo + step] = acc
    return out


def lower_envelope_numpy(fs, cands, leq, join, bottom, sup_table=None):
    cands = np.asarray(cands, dtype=np.int64)

    def dominated(f):
        return leq[cands[None, :, :], f[:, None, :]].all(axis=-1)

    if sup_table is None and leq.shape[0] <= MASK_TABLE_LIMIT:
        from .order import _mask_table
        sup_table = _mask_table(join, bottom, leq.shape[0])
    return _envelope_numpy(fs, cands, dominated, join, bottom, sup_table)


def upper_envelope_numpy(fs, cands, leq, meet, top, inf_table=None):
    cands = np.asarray(cands, dtype=np.int64)

    def dominating(f):
        return leq[f[:, None, :], cands[None, :, :]].all(axis=-1)

    if inf_table is None and leq.shape[0] <= MASK_TABLE_LIMIT:
        from .order import _mask_table
        inf_table = _mask_table(meet, top, leq.shape[0])
    return _envelope_numpy(fs, cands, dominating, meet, top, inf_table)


@njit
def closed_pairs_numba(fs, start, members, op, weights, flags):
    total = 0
    for r in range(fs.shape[0]):
        total += members.shape[0] - start[r]
    out = np.empty(total, dtype=np.bool_)
    k = 0
    for r in range(fs.shape[0]):
        for j in range(start[r], members.shape[0]):
            code = 0
            for x in range(fs.shape[1]):
                code += op[fs[r, x], members[j, x]] * weights[x]
            out[k] = flags[code]
            k += 1
    return out


def closed_pairs_numpy(fs, start, members, op, weights, flags):
    """``flags[code(op(fs[r], members[j]))]`` for every ``r`` and ``j >= start[r]``, row-major."""
    counts = members.shape[0] - np.asarray(start, dtype=np.int64)
    rows = np.repeat(np.arange(fs.shape[0]), counts)
    offs = np.repeat(np.cumsum(counts) - counts, counts)
    cols = np.arange(counts.sum()) - offs + np.repeat(start, counts)
    return flags[op[fs[rows], members[cols]] @ weights]


def all_tables(n: int, nx: int) -> np.ndarray:
    """Every map from ``nx`` points into ``n`` values, row ``k`` = base-n digits of k."""
    k = np.arange(n ** nx, dtype=np.int64)
    return (k[:, None] // (n ** np.arange(nx, dtype=np.int64))[None, :]) % n


def table_codes(tables: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`all_tables`."""
    tables = np.asarray(tables, dtype=np.int64)
    return tables @ (n ** np.arange(tables.shape[-1], dtype=np.int64))


if USE_NUMBA:
    def membership(tables, hx, hS, leq, member):
        return membership_numba(np.ascontiguousarray(tables, dtype=np.int64), hx, hS, leq, member)

    def lower_envelope(fs, cands, leq, join, bottom, sup_table=None):
        return lower_envelope_numba(np.ascontiguousarray(fs, dtype=np.int64),
                                    np.ascontiguousarray(cands, dtype=np.int64), leq, join, bottom)

    def upper_envelope(fs, cands, leq, meet, top, inf_table=None):
        return upper_envelope_numba(np.ascontiguousarray(fs, dtype=np.int64),
                                    np.ascontiguousarray(cands, dtype=np.int64), leq, meet, top)
    def closed_pairs(fs, start, members, op, weights, flags):
        return closed_pairs_numba(np.ascontiguousarray(fs, dtype=np.int64),
                                  np.ascontiguousarray(start, dtype=np.int64),
                                  np.ascontiguousarray(members, dtype=np.int64), op,
                                  np.ascontiguousarray(weights, dtype=np.int64), flags)
else:
    closed_pairs = closed_pairs_numpy
    membership = membership_numpy
    lower_envelope = lower_envelope_numpy
    upper_envelope = upper_envelope_numpy

__all__ = [
    "CLASS_COLUMNS", "HAVE_NUMBA", "USE_NUMBA", "all_tables", "table_codes",
    "membership", "membership_numba", "membership_numpy",
    "lower_envelope", "lower_envelope_numba", "lower_envelope_numpy",
    "upper_envelope", "upper_envelope_numba", "upper_envelope_numpy",
    "closed_pairs", "closed_pairs_numba", "closed_pairs_numpy",
]
