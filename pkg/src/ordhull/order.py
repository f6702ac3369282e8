"""Finite posets, order-completeness, and completion by synthetic extrema.

Elements are opaque string identifiers; internally everything is indexed by
position so that the lattice tables can be handed to the numeric kernels.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import AntisymmetryViolation, NotOrderComplete, OrdhullError

BOT = "BOT"
TOP = "TOP"

# all-subsets scan is used up to this size, the pairwise criterion beyond
EXHAUSTIVE_LIMIT = 12
# sup/inf lookup tables over element bitmasks are built up to this size
MASK_TABLE_LIMIT = 16


class Verdict(NamedTuple):
    ok: bool
    witness: tuple | None = None


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Poset:
    """A finite partial order given by its full ``leq`` matrix."""

    def __init__(self, elements: Sequence[str], leq):
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise OrdhullError("a poset needs at least one element")
        if len(set(elements)) != len(elements):
            raise OrdhullError(f"duplicate element identifiers in {elements}")
        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise OrdhullError(f"leq must be {n}x{n}, got {leq.shape}")
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise OrdhullError(f"leq is not reflexive at {elements[i]}")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            a, b = map(int, np.argwhere(both)[0])
            raise AntisymmetryViolation(
                f"{elements[a]} <= {elements[b]} and {elements[b]} <= {elements[a]}",
                witness=(elements[a], elements[b]),
            )
        # transitivity: leq composed with leq stays inside leq
        comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
        if (comp & ~leq).any():
            a, c = map(int, np.argwhere(comp & ~leq)[0])
            raise OrdhullError(f"leq is not transitive: {elements[a]} ~ {elements[c]}")
        self.elements = elements
        self.leq = _readonly(leq)
        self._index = {e: i for i, e in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)})"

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise OrdhullError(f"unknown poset element {e!r}") from None

    def le(self, a: str, b: str) -> bool:
        return bool(self.leq[self.index(a), self.index(b)])

    @cached_property
    def least(self) -> int | None:
        rows = np.flatnonzero(self.leq.all(axis=1))
        return int(rows[0]) if len(rows) else None

    @cached_property
    def greatest(self) -> int | None:
        cols = np.flatnonzero(self.leq.all(axis=0))
        return int(cols[0]) if len(cols) else None

    def dual(self) -> "Poset":
        return Poset(self.elements, self.leq.T)

    def covers(self) -> list[tuple[str, str]]:
        """Strict cover pairs (a, b): a < b with nothing strictly between."""
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int32) @ lt.astype(np.int32)) > 0
        return [(self.elements[a], self.elements[b]) for a, b in np.argwhere(lt & ~between)]


def closure(pairs: Iterable[tuple[str, str]], elements: Sequence[str]) -> Poset:
    """Reflexive-transitive closure of ``pairs`` over ``elements``."""
    elements = tuple(str(e) for e in elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        if a not in index or b not in index:
            raise OrdhullError(f"pair ({a}, {b}) references an unknown element")
        leq[index[a], index[b]] = True
    for k in range(n):  # Warshall
        leq |= leq[:, [k]] & leq[[k], :]
    return Poset(elements, leq)


def _lower_bounds(leq: np.ndarray, subset: np.ndarray) -> np.ndarray:
    return leq[:, subset].all(axis=1)


def _has_greatest(leq: np.ndarray, mask: np.ndarray) -> bool:
    idx = np.flatnonzero(mask)
    sub = leq[np.ix_(idx, idx)]
    return bool(sub.all(axis=0).any())


def _exhaustive_complete(leq: np.ndarray, elements: tuple) -> Verdict:
    n = len(elements)
    subsets = [np.array(c) for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]
    # lower order-completeness first, then upper
    for rel in (leq, leq.T):
        for sub in subsets:
            lb = _lower_bounds(rel, sub)
            if lb.any() and not _has_greatest(rel, lb):
                return Verdict(False, tuple(elements[i] for i in sub))
    return Verdict(True, None)


def _pairwise_complete(leq: np.ndarray, elements: tuple) -> Verdict:
    n = len(elements)
    for rel in (leq, leq.T):
        for a, b in itertools.combinations(range(n), 2):
            lb = rel[:, a] & rel[:, b]
            if lb.any() and not _has_greatest(rel, lb):
                return Verdict(False, (elements[a], elements[b]))
    return Verdict(True, None)


def is_order_complete(P: Poset, method: str = "auto") -> Verdict:
    """Every nonempty bounded-below subset has an inf and every nonempty
    bounded-above subset has a sup.

    ``method`` is ``"exhaustive"`` (all subsets), ``"pairwise"`` (meets of
    pairs with a common lower bound, joins dually) or ``"auto"``.
    """
    if method == "auto":
        method = "exhaustive" if len(P) <= EXHAUSTIVE_LIMIT else "pairwise"
    if method == "exhaustive":
        return _exhaustive_complete(P.leq, P.elements)
    if method == "pairwise":
        return _pairwise_complete(P.leq, P.elements)
    raise ValueError(f"unknown method {method!r}")


class CompletedPoset:
    """The base poset with ``BOT``/``TOP`` adjoined where no least/greatest exists.

    Indices ``0..len(base)-1`` are the base elements in their given order,
    followed by ``BOT`` and then ``TOP`` when added. ``bottom``/``top`` are
    the indices of the global minimum and maximum of the completed order.
    """

    def __init__(self, base: Poset):
        self.base = base
        self.bottom_added = base.least is None
        self.top_added = base.greatest is None
        k = len(base)
        labels = list(base.elements)
        if self.bottom_added:
            if BOT in labels:
                raise OrdhullError(f"cannot adjoin {BOT}: identifier already used")
            labels.append(BOT)
        if self.top_added:
            if TOP in labels:
                raise OrdhullError(f"cannot adjoin {TOP}: identifier already used")
            labels.append(TOP)
        n = len(labels)
        leq = np.zeros((n, n), dtype=bool)
        leq[:k, :k] = base.leq
        if self.bottom_added:
            leq[k, :] = True
            self.bottom = k
        else:
            self.bottom = base.least
        if self.top_added:
            leq[:, n - 1] = True
            self.top = n - 1
        else:
            self.top = base.greatest
        self.labels = tuple(labels)
        self.leq = _readonly(leq)
        member = np.zeros(n, dtype=bool)
        member[:k] = True
        self.member = _readonly(member)
        self._index = {e: i for i, e in enumerate(labels)}
        self.base_complete = is_order_complete(base)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"CompletedPoset({list(self.labels)})"

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise OrdhullError(f"unknown element {e!r} of the completed poset") from None

    def is_symbol(self, i: int) -> bool:
        return not self.member[i]

    def _require_complete(self) -> None:
        if not self.base_complete.ok:
            raise NotOrderComplete(
                f"base poset is not order-complete; witness {self.base_complete.witness}",
                witness=self.base_complete.witness,
            )

    @cached_property
    def join(self) -> np.ndarray:
        self._require_complete()
        return _readonly(_extremum_table(self.leq))

    @cached_property
    def meet(self) -> np.ndarray:
        self._require_complete()
        return _readonly(_extremum_table(self.leq.T))

    @cached_property
    def sup_table(self) -> np.ndarray:
        """``sup_table[m]`` is the sup of the elements whose bits are set in ``m``."""
        return _readonly(_mask_table(self.join, self.bottom, len(self)))

    @cached_property
    def inf_table(self) -> np.ndarray:
        return _readonly(_mask_table(self.meet, self.top, len(self)))

    def sup(self, A: Iterable[int]) -> int:
        self._require_complete()
        out = self.bottom
        for a in A:
            out = int(self.join[out, a])
        return out

    def inf(self, A: Iterable[int]) -> int:
        self._require_complete()
        out = self.top
        for a in A:
            out = int(self.meet[out, a])
        return out

    def as_poset(self) -> Poset:
        return Poset(self.labels, self.leq)

    def dual(self) -> "CompletedPoset":
        return CompletedPoset(self.base.dual())


def _extremum_table(leq: np.ndarray) -> np.ndarray:
    """Least upper bounds of all pairs in a lattice order."""
    n = leq.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            ub = np.flatnonzero(leq[a] & leq[b])
            least = ub[leq[np.ix_(ub, ub)].all(axis=1)]
            if len(least) != 1:
                raise NotOrderComplete(f"no least upper bound for indices {a}, {b}")
            out[a, b] = out[b, a] = least[0]
    return out


def _mask_table(op: np.ndarray, unit: int, n: int) -> np.ndarray:
    if n > MASK_TABLE_LIMIT:
        raise OrdhullError(f"mask tables need at most {MASK_TABLE_LIMIT} elements, got {n}")
    table = np.empty(1 << n, dtype=np.int64)
    table[0] = unit
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        table[m] = op[table[m & (m - 1)], low]
    return table


def complete(P: Poset | CompletedPoset) -> CompletedPoset:
    """Adjoin ``BOT``/``TOP`` where the poset lacks a least/greatest element.

    Completing an already completed poset returns it unchanged.
    """
    if isinstance(P, CompletedPoset):
        return P
    return CompletedPoset(P)


def sup(A: Iterable[int], C: CompletedPoset) -> int:
    return C.sup(A)


def inf(A: Iterable[int], C: CompletedPoset) -> int:
    return C.inf(A)


def poset_catalog(n: int) -> tuple[Poset, ...]:
    """One representative per isomorphism class of posets on ``n`` points.

    Representatives are naturally labelled (``s_i < s_j`` only if ``i < j``),
    listed in a deterministic order.
    """
    return _poset_catalog(n)


_CATALOG: dict[int, tuple[Poset, ...]] = {}


def _poset_catalog(n: int) -> tuple[Poset, ...]:
    if n in _CATALOG:
        return _CATALOG[n]
    if n < 1 or n > 6:
        raise OrdhullError(f"poset catalog supports 1..6 points, got {n}")
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = [np.array(p) for p in itertools.permutations(range(n))]
    seen: dict[bytes, np.ndarray] = {}
    for bits in range(1 << len(upper)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(upper):
            if bits >> k & 1:
                leq[i, j] = True
        comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
        if (comp & ~leq).any():
            continue
        key = min(leq[np.ix_(p, p)].tobytes() for p in perms)
        if key not in seen:
            seen[key] = leq
    out = []
    for key in sorted(seen):
        canon = np.frombuffer(key, dtype=bool).reshape(n, n)
        # reorder to a natural labelling (topological order by down-set size)
        order = np.argsort(canon.sum(axis=0), kind="stable")
        leq = canon[np.ix_(order, order)]
        out.append(Poset([f"s{i}" for i in range(n)], leq))
    _CATALOG[n] = tuple(out)
    return _CATALOG[n]


def order_automorphisms(P: Poset) -> list[tuple[int, ...]]:
    n = len(P)
    out = []
    for p in itertools.permutations(range(n)):
        pa = np.array(p)
        if np.array_equal(P.leq[np.ix_(pa, pa)], P.leq):
            out.append(p)
    return out


def monotone_maps(P: Poset) -> list[tuple[int, ...]]:
    """All order-preserving self-maps of ``P`` as index tuples."""
    n = len(P)
    leq = P.leq
    pairs = np.argwhere(leq)
    out = []
    for img in itertools.product(range(n), repeat=n):
        a = np.asarray(img)
        if leq[a[pairs[:, 0]], a[pairs[:, 1]]].all():
            out.append(img)
    return out
