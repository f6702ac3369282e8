"""Homogeneity classes, envelopes and regularization on a finite instance.

Everything here works on int64 arrays of completed-poset indices. Batches of
functions are ``(F, |X|)`` arrays; the public single-function wrappers take
and return :class:`~ordhull.instance.FunctionTable`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .actions import orbit_partition
from .algebra import generate_indices
from .errors import (EnumerationTooLarge, GroupModeOnNonGroup, NotGenerating, OrbitwiseNeedsGroups,
                     OrdhullError, TargetNotGroup)
from .instance import FunctionTable, Instance
from .order import MASK_TABLE_LIMIT

CLASSES = kernels.CLASS_COLUMNS
CLASS_INDEX = {c: i for i, c in enumerate(CLASSES)}
ALGORITHMS = ("bruteforce", "orbitwise")
RELATIONS = ("<=", ">=", "=")

# n ** |X| above this and brute force refuses to enumerate
MAX_TABLES = 2_000_000


def class_name(cls: str) -> str:
    c = str(cls).upper()
    if c not in CLASS_INDEX:
        raise OrdhullError(f"unknown class {cls!r}; expected one of {', '.join(CLASSES)}")
    return c


def _fold(op: np.ndarray, unit: int, values: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Fold ``op`` over axis 1 of ``values`` (F, K, X), keeping entries where ``mask`` (F, K)."""
    F, K, nx = values.shape
    acc = np.full((F, nx), unit, dtype=np.int64)
    for k in range(K):
        acc = np.where(mask[:, k, None], op[acc, values[:, k]], acc)
    return acc


@dataclass(frozen=True)
class _Orbit:
    points: np.ndarray      # carrier indices in the orbit, representative first
    mover: np.ndarray       # mover[i]: some h with h * rep = points[i]
    stabilizer: np.ndarray  # indices of h fixing the representative


class Workspace:
    """Per-instance cache of lookup tables, candidate tables and class masks."""

    def __init__(self, inst: Instance):
        self.inst = inst
        C = inst.C
        self.C = C
        self.n = len(C)
        self.nx = len(inst.X)
        self.leq = np.ascontiguousarray(C.leq)
        self.member = np.ascontiguousarray(C.member)
        self.bottom = int(C.bottom)
        self.top = int(C.top)
        self.hx = np.ascontiguousarray(inst.hx)
        self.hS = np.ascontiguousarray(inst.hS)

    # -- lattice tables (need completeness, checked by Instance) ---------------
    @cached_property
    def join(self) -> np.ndarray:
        return np.ascontiguousarray(self.C.join)

    @cached_property
    def meet(self) -> np.ndarray:
        return np.ascontiguousarray(self.C.meet)

    @cached_property
    def sup_table(self):
        return self.C.sup_table if self.n <= MASK_TABLE_LIMIT else None

    @cached_property
    def inf_table(self):
        return self.C.inf_table if self.n <= MASK_TABLE_LIMIT else None

    # -- candidate enumeration --------------------------------------------
    @property
    def table_count(self) -> int:
        return self.n ** self.nx

    def _require_enumerable(self) -> None:
        if self.table_count > MAX_TABLES:
            raise EnumerationTooLarge(
                f"{self.n}^{self.nx} = {self.table_count} candidate tables exceeds {MAX_TABLES}")

    @cached_property
    def tables(self) -> np.ndarray:
        self._require_enumerable()
        return kernels.all_tables(self.n, self.nx)

    @cached_property
    def table_classes(self) -> np.ndarray:
        """``(n^|X|, 4)`` class membership of every table, indexed by table code."""
        m = kernels.membership(self.tables, self.hx, self.hS, self.leq, self.member)
        m.setflags(write=False)
        return m

    def candidates(self, cls: str) -> np.ndarray:
        cls = class_name(cls)
        cache = self.__dict__.setdefault("_cands", {})
        if cls not in cache:
            cache[cls] = np.ascontiguousarray(self.tables[self.table_classes[:, CLASS_INDEX[cls]]])
        return cache[cls]

    def codes(self, fs: np.ndarray) -> np.ndarray:
        return kernels.table_codes(fs, self.n)

    # -- classification ----------------------------------------------------
    def classify(self, fs: np.ndarray) -> np.ndarray:
        """``(F, 4)`` membership in HG, HGC, SUB, SUPER."""
        fs = np.atleast_2d(np.asarray(fs, dtype=np.int64))
        if "table_classes" in self.__dict__:
            return self.table_classes[self.codes(fs)]
        return kernels.membership(fs, self.hx, self.hS, self.leq, self.member)

    def closed_pairs(self, fs: np.ndarray, start: np.ndarray, members: np.ndarray, op: str,
                     cls: str) -> np.ndarray:
        """Class membership of ``op(fs[r], members[j])`` for ``j >= start[r]``, row-major."""
        table = self.join if op == "join" else self.meet
        weights = self.n ** np.arange(len(self.inst.X), dtype=np.int64)
        flags = np.ascontiguousarray(self.table_classes[:, CLASS_INDEX[class_name(cls)]])
        return kernels.closed_pairs(fs, start, members, table, weights, flags)

    def holds_on(self, fs: np.ndarray, hs: Iterable[int], relation: str) -> np.ndarray:
        """Relation ``f(hx) rel h(h)f(x)`` for ``h`` in ``hs`` and every ``x``; one bool per row."""
        fs = np.atleast_2d(np.asarray(fs, dtype=np.int64))
        hs = np.fromiter(hs, dtype=np.int64)
        if hs.size == 0:
            return np.ones(len(fs), dtype=bool)
        lhs = fs[:, self.hx[hs]]
        rhs = self.hS[hs[None, :, None], fs[:, None, :]]
        if relation == "<=":
            ok = self.leq[lhs, rhs]
        elif relation == ">=":
            ok = self.leq[rhs, lhs]
        elif relation == "=":
            ok = lhs == rhs
        else:
            raise OrdhullError(f"unknown relation {relation!r}")
        return ok.all(axis=(1, 2))

    # -- envelopes ------------------------------------------------------------
    def lower(self, fs: np.ndarray, cls: str, algorithm: str = "bruteforce") -> np.ndarray:
        fs = np.atleast_2d(np.asarray(fs, dtype=np.int64))
        cls = class_name(cls)
        if algorithm == "orbitwise":
            return self._orbitwise(fs, cls, lower=True)
        if algorithm != "bruteforce":
            raise OrdhullError(f"unknown algorithm {algorithm!r}")
        return kernels.lower_envelope(fs, self.candidates(cls), self.leq, self.join, self.bottom,
                                      None if kernels.USE_NUMBA else self.sup_table)

    def upper(self, fs: np.ndarray, cls: str, algorithm: str = "bruteforce") -> np.ndarray:
        fs = np.atleast_2d(np.asarray(fs, dtype=np.int64))
        cls = class_name(cls)
        if algorithm == "orbitwise":
            return self._orbitwise(fs, cls, lower=False)
        if algorithm != "bruteforce":
            raise OrdhullError(f"unknown algorithm {algorithm!r}")
        return kernels.upper_envelope(fs, self.candidates(cls), self.leq, self.meet, self.top,
                                      None if kernels.USE_NUMBA else self.inf_table)

    @cached_property
    def orbits(self) -> tuple[_Orbit, ...]:
        inst = self.inst
        part = orbit_partition(inst.action_X)
        out = []
        for orb, rep in zip(part.orbits, part.representatives):
            r = inst.action_X.index(rep)
            pts = [r] + sorted(inst.action_X.index(y) for y in orb if y != rep)
            mover = [int(np.flatnonzero(self.hx[:, r] == y)[0]) for y in pts]
            stab = np.flatnonzero(self.hx[:, r] == r)
            out.append(_Orbit(np.array(pts), np.array(mover), stab))
        return tuple(out)

    def _orbit_values(self, orb: _Orbit, cls: str) -> np.ndarray:
        """``V[s, i]``: value at ``orb.points[i]`` of the homogeneous extension of ``s``."""
        pool = np.arange(self.n) if cls == "HGC" else np.flatnonzero(self.member)
        compatible = (self.hS[orb.stabilizer][:, pool] == pool[None, :]).all(axis=0)
        pool = pool[compatible]
        return self.hS[orb.mover][:, pool].T

    def _orbitwise(self, fs: np.ndarray, cls: str, lower: bool) -> np.ndarray:
        if cls not in ("HG", "HGC"):
            raise OrbitwiseNeedsGroups(f"orbitwise algorithm supports HG and HGC only, not {cls}")
        if not (self.inst.H.is_group and self.inst.T.is_group):
            raise OrbitwiseNeedsGroups("orbitwise algorithm requires H and T to be groups")
        F = len(fs)
        op, unit = (self.join, self.bottom) if lower else (self.meet, self.top)
        out = np.full((F, self.nx), unit, dtype=np.int64)
        empty = np.zeros(F, dtype=bool)
        for orb in self.orbits:
            V = self._orbit_values(orb, cls)                       # (m, |orb|)
            fo = fs[:, orb.points]                                 # (F, |orb|)
            if lower:
                D = self.leq[V[None, :, :], fo[:, None, :]].all(axis=-1)
            else:
                D = self.leq[fo[:, None, :], V[None, :, :]].all(axis=-1)
            empty |= ~D.any(axis=1)
            vals = np.broadcast_to(V[None], (F,) + V.shape)
            out[:, orb.points] = _fold(op, unit, vals, D)
        out[empty] = unit
        return out

    # -- regularization -------------------------------------------------------
    def _regularized(self, fs: np.ndarray, lower: bool) -> np.ndarray:
        hinv = self.inst.hinvS
        if hinv is None:
            raise TargetNotGroup("regularization needs T = h(H) to be a group")
        fs = np.atleast_2d(np.asarray(fs, dtype=np.int64))
        nh = self.hx.shape[0]
        vals = hinv[np.arange(nh)[None, :, None], fs[:, self.hx]]     # (F, H, X)
        op, unit = (self.meet, self.top) if lower else (self.join, self.bottom)
        return _fold(op, unit, vals, np.ones(vals.shape[:2], dtype=bool))

    def reg_min(self, fs: np.ndarray) -> np.ndarray:
        return self._regularized(fs, lower=True)

    def reg_max(self, fs: np.ndarray) -> np.ndarray:
        return self._regularized(fs, lower=False)

    # -- pointwise operations -------------------------------------------------
    def act(self, t: int, fs: np.ndarray) -> np.ndarray:
        return self.inst.tS[t][np.asarray(fs, dtype=np.int64)]

    def pjoin(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.join[a, b]

    def pmeet(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.meet[a, b]

    def set_sup(self, A: Iterable[int]) -> int:
        return self.C.sup(A)

    def set_inf(self, A: Iterable[int]) -> int:
        return self.C.inf(A)


def workspace(inst: Instance) -> Workspace:
    """The instance's cached :class:`Workspace`."""
    ws = inst.__dict__.get("_workspace")
    if ws is None:
        ws = inst.__dict__["_workspace"] = Workspace(inst)
    return ws


def _wrap(inst: Instance, row: np.ndarray) -> FunctionTable:
    return FunctionTable(inst.X, inst.C, tuple(int(v) for v in row))


def _row(inst: Instance, f) -> np.ndarray:
    if isinstance(f, FunctionTable):
        return f.array[None, :]
    if isinstance(f, Mapping) or (len(f) and isinstance(f[0], str)):
        return inst.function(f).array[None, :]
    return np.atleast_2d(np.asarray(f, dtype=np.int64))


# -- single-function API ------------------------------------------------------

def classify(inst: Instance, f) -> frozenset[str]:
    """Classes among HG, HGC, SUB, SUPER that contain ``f``."""
    m = workspace(inst).classify(_row(inst, f))[0]
    return frozenset(c for c, ok in zip(CLASSES, m) if ok)


def check_on_generators(inst: Instance, f, gens: Iterable[str], relation: str = "=",
                        mode: str = "semigroup") -> bool:
    """Check ``f(hx) rel h(h)f(x)`` for ``h`` in ``gens`` only.

    ``gens`` must generate H as a semigroup, or as a group (relation ``=``
    only, H a group). For a generating set this agrees with the full check.
    """
    if relation not in RELATIONS:
        raise OrdhullError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    H = inst.H
    idx = [H.index(g) for g in gens]
    if mode == "group":
        if relation != "=":
            raise OrdhullError("group-mode generation is only meaningful for '='")
        if not H.is_group:
            raise GroupModeOnNonGroup("group-mode generation needs H to be a group")
    elif mode != "semigroup":
        raise OrdhullError(f"unknown generation mode {mode!r}")
    if not idx or len(generate_indices(H, idx, mode)) != len(H):
        raise NotGenerating(f"{sorted(gens)} does not generate H as a {mode}", witness=tuple(gens))
    return bool(workspace(inst).holds_on(_row(inst, f), idx, relation)[0])


def lower_envelope(inst: Instance, f, cls: str, algorithm: str = "bruteforce") -> FunctionTable:
    """Pointwise sup of the members of ``cls`` lying below ``f``."""
    return _wrap(inst, workspace(inst).lower(_row(inst, f), cls, algorithm)[0])


def upper_envelope(inst: Instance, f, cls: str, algorithm: str = "bruteforce") -> FunctionTable:
    """Pointwise inf of the members of ``cls`` lying above ``f``."""
    return _wrap(inst, workspace(inst).upper(_row(inst, f), cls, algorithm)[0])


def regularized_minorant(inst: Instance, f) -> FunctionTable:
    return _wrap(inst, workspace(inst).reg_min(_row(inst, f))[0])


def regularized_majorant(inst: Instance, f) -> FunctionTable:
    return _wrap(inst, workspace(inst).reg_max(_row(inst, f))[0])


def left_multiply(inst: Instance, t: str, f) -> FunctionTable:
    """``x -> t f(x)``."""
    return _wrap(inst, workspace(inst).act(inst.T.index(t), _row(inst, f))[0])
