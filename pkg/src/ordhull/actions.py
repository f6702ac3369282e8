"""Left actions on carriers and monotone actions on completed posets.

An action is stored as a table ``act[h, x]`` of point indices. Orbits,
stabilizers and stationary points are computed straight from the table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .algebra import FiniteSemigroup, Homomorphism
from .errors import Ax0Violation, Ax1Violation, Ax2Violation, NotAGroup, OrdhullError
from .order import CompletedPoset, Poset, monotone_maps, order_automorphisms


class CarrierAction:
    """``H`` acting on the finite carrier ``X`` from the left."""

    def __init__(self, acting: FiniteSemigroup, carrier: Sequence[str], table):
        carrier = tuple(str(x) for x in carrier)
        if not carrier:
            raise OrdhullError("the carrier must be nonempty")
        if len(set(carrier)) != len(carrier):
            raise OrdhullError(f"duplicate carrier identifiers in {carrier}")
        table = np.array(table, dtype=np.int64)
        if table.shape != (len(acting), len(carrier)):
            raise OrdhullError(f"action table must be {len(acting)}x{len(carrier)}")
        if table.min() < 0 or table.max() >= len(carrier):
            raise OrdhullError("action maps outside the carrier")
        table.setflags(write=False)
        self.acting = acting
        self.carrier = carrier
        self.table = table
        self._index = {x: i for i, x in enumerate(carrier)}

    @property
    def points(self) -> tuple[str, ...]:
        return self.carrier

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise OrdhullError(f"unknown carrier element {x!r}") from None


class OrderedAction:
    """``T`` acting monotonically on a completed poset; symbols stay fixed.

    ``table`` is indexed by completed-poset indices. Use :meth:`from_base` to
    extend a table given on the base elements only.
    """

    def __init__(self, acting: FiniteSemigroup, codomain: CompletedPoset, table):
        table = np.array(table, dtype=np.int64)
        n = len(codomain)
        if table.shape != (len(acting), n):
            raise OrdhullError(f"action table must be {len(acting)}x{n}")
        if table.min() < 0 or table.max() >= n:
            raise OrdhullError("action maps outside the completed poset")
        table.setflags(write=False)
        self.acting = acting
        self.codomain = codomain
        self.table = table

    @classmethod
    def from_base(cls, acting: FiniteSemigroup, codomain: CompletedPoset, base_table) -> "OrderedAction":
        base_table = np.array(base_table, dtype=np.int64)
        k = len(codomain.base)
        if base_table.shape != (len(acting), k):
            raise OrdhullError(f"base action table must be {len(acting)}x{k}")
        full = np.tile(np.arange(len(codomain)), (len(acting), 1))
        full[:, :k] = base_table
        return cls(acting, codomain, full)

    @property
    def points(self) -> tuple[str, ...]:
        return self.codomain.labels

    def index(self, s: str) -> int:
        return self.codomain.index(s)


Action = CarrierAction | OrderedAction


def _check_semigroup_axioms(acting: FiniteSemigroup, table: np.ndarray, points) -> None:
    # Ax0: h1(h2 x) == (h1 h2) x
    lhs = table[:, table]                      # lhs[h1, h2, x] = h1(h2 x)
    rhs = table[acting.table]                  # rhs[h1, h2, x] = (h1 h2) x
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        h1, h2, x = map(int, bad[0])
        w = (acting.elements[h1], acting.elements[h2], points[x])
        raise Ax0Violation(f"{w[0]}({w[1]}{w[2]}) != ({w[0]}{w[1]}){w[2]}", witness=w)
    if acting.is_monoid:
        row = table[acting.identity]
        bad = np.flatnonzero(row != np.arange(len(points)))
        if len(bad):
            w = (acting.elements[acting.identity], points[int(bad[0])])
            raise Ax1Violation(f"identity moves {w[1]}", witness=w)


def validate_action(A: Action) -> Action:
    """Check Ax0, Ax1 (monoids) and, for ordered actions, Ax2 and fixed symbols.

    Returns ``A`` unchanged or raises the matching violation with a witness.
    """
    _check_semigroup_axioms(A.acting, A.table, A.points)
    if isinstance(A, OrderedAction):
        C = A.codomain
        k = len(C.base)
        for i in range(k, len(C)):
            moved = np.flatnonzero(A.table[:, i] != i)
            if len(moved):
                raise Ax2Violation(f"{C.labels[i]} is not fixed",
                                   witness=(A.acting.elements[int(moved[0])], C.labels[i]))
        if (A.table[:, :k] >= k).any():
            t, s = map(int, np.argwhere(A.table[:, :k] >= k)[0])
            raise OrdhullError(f"{A.acting.elements[t]} maps base element {C.labels[s]} to a symbol")
        pairs = np.argwhere(C.leq)
        img_ok = C.leq[A.table[:, pairs[:, 0]], A.table[:, pairs[:, 1]]]
        bad = np.argwhere(~img_ok)
        if len(bad):
            t, p = map(int, bad[0])
            s1, s2 = pairs[p]
            w = (A.acting.elements[t], C.labels[s1], C.labels[s2])
            raise Ax2Violation(f"{w[1]} <= {w[2]} but {w[0]}{w[1]} !<= {w[0]}{w[2]}", witness=w)
    return A


def _orbit_idx(A: Action, i: int) -> frozenset[int]:
    return frozenset(int(v) for v in A.table[:, i])


def orbit(A: Action, x: str) -> frozenset[str]:
    """``{h x : h in H}``."""
    return frozenset(A.points[i] for i in _orbit_idx(A, A.index(x)))


def orbit_by_iteration(A: Action, x: str) -> frozenset[str]:
    """Orbit as the fixpoint of repeated one-step application (test route)."""
    i = A.index(x)
    reach = {int(v) for v in A.table[:, i]}
    frontier = set(reach)
    while frontier:
        nxt = {int(v) for y in frontier for v in A.table[:, y]} - reach
        reach |= nxt
        frontier = nxt
    return frozenset(A.points[j] for j in reach)


def stabilizer(A: Action, x: str) -> frozenset[str]:
    i = A.index(x)
    return frozenset(A.acting.elements[h] for h in np.flatnonzero(A.table[:, i] == i))


def stationary_elements(A: Action) -> frozenset[str]:
    n = A.table.shape[1]
    fixed = (A.table == np.arange(n)[None, :]).all(axis=0)
    return frozenset(A.points[i] for i in np.flatnonzero(fixed))


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[frozenset[str], ...]
    representatives: tuple[str, ...]

    def orbit_of(self, x: str) -> frozenset[str]:
        for o in self.orbits:
            if x in o:
                return o
        raise KeyError(x)


def orbit_partition(A: Action) -> OrbitPartition:
    """Disjoint orbits of a group action; each represented by its least identifier."""
    if not A.acting.is_group:
        raise NotAGroup("orbit partition is defined for group actions only")
    seen: set[frozenset[str]] = set()
    for x in A.points:
        seen.add(orbit(A, x))
    orbits = sorted(seen, key=min)
    return OrbitPartition(tuple(orbits), tuple(min(o) for o in orbits))


def is_free(A: CarrierAction) -> bool:
    """Every stabilizer is trivial (contains at most the identity)."""
    ident = A.acting.identity
    n = A.table.shape[1]
    fixes = A.table == np.arange(n)[None, :]
    if ident is not None:
        fixes = np.delete(fixes, ident, axis=0)
    return not fixes.any()


@dataclass(frozen=True)
class OrbitImageVerdict:
    inclusion: bool
    equality: bool
    stationary_transfer: bool
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.inclusion and self.equality and self.stationary_transfer


def orbit_image_check(A_X: CarrierAction, A_S: OrderedAction, h: Homomorphism, f) -> OrbitImageVerdict:
    """Compare ``f(orb x)`` with the orbit of ``f(x)`` in the completed poset.

    ``f`` is a sequence of completed-poset indices over the carrier.
    Equality and stationarity transfer are only expected for surjective ``h``.
    """
    f = np.asarray(f)
    TS = A_S.table
    witness = None
    inclusion = equality = transfer = True
    stat_x = (A_X.table == np.arange(len(A_X.carrier))[None, :]).all(axis=0)
    stat_s = (TS == np.arange(TS.shape[1])[None, :]).all(axis=0)
    for i, x in enumerate(A_X.carrier):
        img = set(f[A_X.table[:, i]].tolist())
        orb = set(TS[:, f[i]].tolist())
        if not img <= orb:
            inclusion = False
            witness = witness or {"part": "inclusion", "x": x}
        if stat_s[f[i]] and img != {int(f[i])}:
            inclusion = False
            witness = witness or {"part": "stationary_value", "x": x}
        if h.is_surjective:
            if img != orb:
                equality = False
                witness = witness or {"part": "equality", "x": x}
            if stat_x[i] and not stat_s[f[i]]:
                transfer = False
                witness = witness or {"part": "stationary_transfer", "x": x}
    return OrbitImageVerdict(inclusion, equality, transfer, witness)


# -- enumeration of actions -------------------------------------------------

def _compose(f: tuple, g: tuple) -> tuple:
    """(f o g)(x) = f(g(x))."""
    return tuple(f[i] for i in g)


def _actions(acting: FiniteSemigroup, candidates: list[tuple], identity_map: tuple,
             rng: np.random.Generator | None = None) -> Iterator[tuple[tuple, ...]]:
    """Backtracking over assignments ``h -> map`` satisfying Ax0 (and Ax1).

    With ``rng`` the candidate order is shuffled at every node; the first
    solution is then a random action.
    """
    m = len(acting)
    T = acting.table
    ident = acting.identity
    assign: list[tuple | None] = [None] * m

    def consistent(k: int) -> bool:
        # every Ax0 instance whose three elements are assigned and involve k
        for a in range(k + 1):
            for b in range(k + 1):
                ab = int(T[a, b])
                if ab > k or max(a, b, ab) != k:
                    continue
                if assign[ab] != _compose(assign[a], assign[b]):
                    return False
        return True

    def rec(k: int):
        if k == m:
            yield tuple(assign)
            return
        if k == ident:
            opts = [identity_map]
        elif rng is not None:
            opts = [candidates[i] for i in rng.permutation(len(candidates))]
        else:
            opts = candidates
        for c in opts:
            assign[k] = c
            if consistent(k):
                yield from rec(k + 1)
        assign[k] = None

    yield from rec(0)


def _carrier_candidates(acting: FiniteSemigroup, n: int) -> list[tuple]:
    if acting.is_group:
        return list(itertools.permutations(range(n)))
    return list(itertools.product(range(n), repeat=n))


def _relabel(assign: tuple[tuple, ...], perm: Sequence[int]) -> tuple[tuple, ...]:
    # conjugate every map by the point relabelling i -> perm[i]
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[mp[inv[j]]] for j in range(len(perm))) for mp in assign)


def carrier_actions(acting: FiniteSemigroup, n: int, dedupe: bool = True) -> Iterator[np.ndarray]:
    """All actions of ``acting`` on ``n`` points, optionally up to relabelling."""
    ident = tuple(range(n))
    perms = list(itertools.permutations(range(n))) if dedupe else []
    seen: set = set()
    for assign in _actions(acting, _carrier_candidates(acting, n), ident):
        if dedupe:
            key = min(_relabel(assign, p) for p in perms)
            if key in seen:
                continue
            seen.add(key)
            assign = key
        yield np.array(assign, dtype=np.int64)


def random_carrier_action(acting: FiniteSemigroup, n: int, rng: np.random.Generator) -> np.ndarray:
    ident = tuple(range(n))
    assign = next(_actions(acting, _carrier_candidates(acting, n), ident, rng))
    return np.array(assign, dtype=np.int64)


def _ordered_candidates(acting: FiniteSemigroup, P: Poset) -> list[tuple]:
    if acting.is_group:
        return order_automorphisms(P)
    return monotone_maps(P)


def ordered_actions(acting: FiniteSemigroup, P: Poset, dedupe: bool = True) -> Iterator[np.ndarray]:
    """Base tables of all monotone actions on ``P``, optionally up to order automorphisms."""
    ident = tuple(range(len(P)))
    autos = order_automorphisms(P) if dedupe else []
    seen: set = set()
    for assign in _actions(acting, _ordered_candidates(acting, P), ident):
        if dedupe:
            key = min(_relabel(assign, p) for p in autos)
            if key in seen:
                continue
            seen.add(key)
            assign = key
        yield np.array(assign, dtype=np.int64)


def random_ordered_action(acting: FiniteSemigroup, P: Poset, rng: np.random.Generator) -> np.ndarray:
    ident = tuple(range(len(P)))
    assign = next(_actions(acting, _ordered_candidates(acting, P), ident, rng))
    return np.array(assign, dtype=np.int64)
