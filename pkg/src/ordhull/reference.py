"""Slow, independent oracle straight from the definitions.

Nothing here uses the lattice tables, kernels or orbit machinery: sups and
infs are found by scanning the order relation, classes are decided by
looping over every ``(h, x)``, and envelopes by enumerating every table with
``itertools.product``. It exposes the same batch interface as
:class:`ordhull.envelope.Workspace` so statements can run on either.
"""
from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .envelope import CLASS_INDEX, class_name
from .errors import OrdhullError, TargetNotGroup
from .instance import Instance


class ReferenceEngine:
    def __init__(self, inst: Instance):
        self.inst = inst
        C = inst.C
        self.n = len(C)
        self.nx = len(inst.X)
        self.le = [[bool(C.leq[a, b]) for b in range(self.n)] for a in range(self.n)]
        self.in_s = [bool(m) for m in C.member]
        self.hx = inst.hx.tolist()
        self.tS = inst.tS.tolist()
        self.hom = inst.hom.map.tolist()
        self.T = inst.T
        self._members: dict[str, list[tuple]] = {}

    # -- order ---------------------------------------------------------------
    def set_sup(self, A: Iterable[int]) -> int:
        A = list(A)
        ub = [u for u in range(self.n) if all(self.le[a][u] for a in A)]
        least = [u for u in ub if all(self.le[u][v] for v in ub)]
        if len(least) != 1:
            raise OrdhullError(f"no supremum for {A}")
        return least[0]

    def set_inf(self, A: Iterable[int]) -> int:
        A = list(A)
        lb = [u for u in range(self.n) if all(self.le[u][a] for a in A)]
        great = [u for u in lb if all(self.le[v][u] for v in lb)]
        if len(great) != 1:
            raise OrdhullError(f"no infimum for {A}")
        return great[0]

    def pjoin(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return np.array([self.set_sup([int(u), int(v)]) for u, v in zip(a.ravel(), b.ravel())],
                        dtype=np.int64).reshape(a.shape)

    def pmeet(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return np.array([self.set_inf([int(u), int(v)]) for u, v in zip(a.ravel(), b.ravel())],
                        dtype=np.int64).reshape(a.shape)

    def act(self, t: int, fs) -> np.ndarray:
        fs = np.asarray(fs, dtype=np.int64)
        return np.array([self.tS[t][int(v)] for v in fs.ravel()], dtype=np.int64).reshape(fs.shape)

    # -- classes -------------------------------------------------------------
    def _hs(self, h: int, s: int) -> int:
        return self.tS[self.hom[h]][s]

    def _relation(self, f, h: int, x: int, relation: str) -> bool:
        a, b = f[self.hx[h][x]], self._hs(h, f[x])
        if relation == "<=":
            return self.le[a][b]
        if relation == ">=":
            return self.le[b][a]
        return a == b

    def _classes(self, f) -> tuple[bool, bool, bool, bool]:
        pairs = [(h, x) for h in range(len(self.hx)) for x in range(self.nx)]
        hgc = all(self._relation(f, h, x, "=") for h, x in pairs)
        sub = all(self._relation(f, h, x, "<=") for h, x in pairs)
        sup = all(self._relation(f, h, x, ">=") for h, x in pairs)
        return (hgc and all(self.in_s[v] for v in f), hgc, sub, sup)

    def classify(self, fs) -> np.ndarray:
        return np.array([self._classes([int(v) for v in f]) for f in np.atleast_2d(fs)], dtype=bool)

    def holds_on(self, fs, hs: Iterable[int], relation: str) -> np.ndarray:
        hs = list(hs)
        return np.array([all(self._relation([int(v) for v in f], h, x, relation)
                             for h in hs for x in range(self.nx))
                         for f in np.atleast_2d(fs)], dtype=bool)

    def candidates(self, cls: str) -> np.ndarray:
        cls = class_name(cls)
        if cls not in self._members:
            col = CLASS_INDEX[cls]
            self._members[cls] = [f for f in itertools.product(range(self.n), repeat=self.nx)
                                  if self._classes(f)[col]]
        return np.array(self._members[cls], dtype=np.int64).reshape(-1, self.nx)

    # -- envelopes -------------------------------------------------------------
    def _envelope(self, f, cls: str, lower: bool) -> list[int]:
        self.candidates(cls)
        members = self._members[class_name(cls)]
        if lower:
            fam = [p for p in members if all(self.le[p[x]][f[x]] for x in range(self.nx))]
            return [self.set_sup([p[x] for p in fam]) for x in range(self.nx)]
        fam = [p for p in members if all(self.le[f[x]][p[x]] for x in range(self.nx))]
        return [self.set_inf([p[x] for p in fam]) for x in range(self.nx)]

    def lower(self, fs, cls: str, algorithm: str = "bruteforce") -> np.ndarray:
        return np.array([self._envelope([int(v) for v in f], cls, True) for f in np.atleast_2d(fs)],
                        dtype=np.int64).reshape(-1, self.nx)

    def upper(self, fs, cls: str, algorithm: str = "bruteforce") -> np.ndarray:
        return np.array([self._envelope([int(v) for v in f], cls, False) for f in np.atleast_2d(fs)],
                        dtype=np.int64).reshape(-1, self.nx)

    def _regularized(self, fs, lower: bool) -> np.ndarray:
        inv = self.T.inverses
        if inv is None:
            raise TargetNotGroup("regularization needs T = h(H) to be a group")
        out = []
        for f in np.atleast_2d(fs):
            f = [int(v) for v in f]
            row = []
            for x in range(self.nx):
                terms = [self.tS[int(inv[self.hom[h]])][f[self.hx[h][x]]] for h in range(len(self.hx))]
                row.append(self.set_inf(terms) if lower else self.set_sup(terms))
            out.append(row)
        return np.array(out, dtype=np.int64).reshape(-1, self.nx)

    def reg_min(self, fs) -> np.ndarray:
        return self._regularized(fs, True)

    def reg_max(self, fs) -> np.ndarray:
        return self._regularized(fs, False)
