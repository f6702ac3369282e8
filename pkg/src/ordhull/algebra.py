"""Finite semigroups as Cayley tables, homomorphisms, generation, and catalogs."""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyGenerators,
    GroupModeOnNonGroup,
    NotAHomomorphism,
    NotAssociative,
    OrdhullError,
    TargetNotMonoid,
)


class FiniteSemigroup:
    """Elements plus a row-major operation table of element indices.

    ``table[a, b]`` is the index of ``a*b``. Associativity is checked on
    construction; identity, inverses and commutativity are derived.
    """

    def __init__(self, elements: Sequence[str], table):
        elements = tuple(str(e) for e in elements)
        n = len(elements)
        if n == 0:
            raise OrdhullError("a semigroup needs at least one element")
        if len(set(elements)) != n:
            raise OrdhullError(f"duplicate element identifiers in {elements}")
        table = np.array(table, dtype=np.int64)
        if table.shape != (n, n):
            raise OrdhullError(f"operation table must be {n}x{n}, got {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise OrdhullError("operation table references unknown elements")
        left = table[table]  # (ab)c as left[a, b, c]
        right = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            a, b, c = (elements[int(i)] for i in bad[0])
            raise NotAssociative(f"({a}{b}){c} != {a}({b}{c})", witness=(a, b, c))
        table.setflags(write=False)
        self.elements = elements
        self.table = table
        self._index = {e: i for i, e in enumerate(elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        kind = "group" if self.is_group else "monoid" if self.is_monoid else "semigroup"
        return f"FiniteSemigroup({kind}, {list(self.elements)})"

    @classmethod
    def from_labels(cls, elements: Sequence[str], rows: Sequence[Sequence[str]]) -> "FiniteSemigroup":
        index = {str(e): i for i, e in enumerate(elements)}
        try:
            table = [[index[str(v)] for v in row] for row in rows]
        except KeyError as exc:
            raise OrdhullError(f"operation table references unknown element {exc.args[0]!r}") from None
        return cls(elements, table)

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise OrdhullError(f"unknown semigroup element {e!r}") from None

    def mul(self, a: str, b: str) -> str:
        return self.elements[self.table[self.index(a), self.index(b)]]

    @cached_property
    def identity(self) -> int | None:
        n = len(self)
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], ar) and np.array_equal(self.table[:, e], ar):
                return e
        return None

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @cached_property
    def inverses(self) -> np.ndarray | None:
        """Two-sided inverses by table scan, or None when some element has none."""
        e = self.identity
        if e is None:
            return None
        both = (self.table == e) & (self.table.T == e)
        if not both.any(axis=1).all():
            return None
        inv = both.argmax(axis=1)
        inv.setflags(write=False)
        return inv

    @property
    def is_group(self) -> bool:
        return self.inverses is not None

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def canonical_key(self) -> bytes:
        return canonical_table(self.table)


def validate_semigroup(elements: Sequence[str], table) -> FiniteSemigroup:
    return FiniteSemigroup(elements, table)


class Homomorphism:
    """A map ``source -> target`` with ``map[a*b] == map[a]*map[b]``."""

    def __init__(self, source: FiniteSemigroup, target: FiniteSemigroup, mapping):
        mapping = np.array(mapping, dtype=np.int64)
        if mapping.shape != (len(source),):
            raise OrdhullError("homomorphism must map every source element")
        if mapping.min() < 0 or mapping.max() >= len(target):
            raise OrdhullError("homomorphism maps outside the target")
        lhs = mapping[source.table]
        rhs = target.table[mapping[:, None], mapping[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = (source.elements[int(i)] for i in bad[0])
            raise NotAHomomorphism(f"h({a}{b}) != h({a})h({b})", witness=(a, b))
        if source.is_monoid and target.is_monoid and mapping[source.identity] != target.identity:
            raise NotAHomomorphism("identity is not mapped to identity",
                                   witness=(source.elements[source.identity],))
        mapping.setflags(write=False)
        self.source = source
        self.target = target
        self.map = mapping

    def __call__(self, h: str) -> str:
        return self.target.elements[self.map[self.source.index(h)]]

    @classmethod
    def from_labels(cls, source, target, mapping: dict) -> "Homomorphism":
        missing = [h for h in source.elements if h not in mapping]
        if missing:
            raise OrdhullError(f"homomorphism has no entry for {missing[0]!r}")
        return cls(source, target, [target.index(str(mapping[h])) for h in source.elements])

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == len(self.target)


def _fresh_label(taken: Iterable[str], base: str = "1") -> str:
    taken = set(taken)
    label = base
    while label in taken:
        label += "'"
    return label


def adjoin_identity(S: FiniteSemigroup, h: Homomorphism | None = None):
    """Adjoin a formal unit ``1`` (``1s = s = s1``) when ``S`` has none.

    A supplied homomorphism is extended by sending the new unit to the
    target's unit. Inputs with an identity are returned unchanged.
    """
    if S.is_monoid:
        return S, h
    if h is not None and not h.target.is_monoid:
        raise TargetNotMonoid("cannot extend the homomorphism: target has no unit")
    n = len(S)
    one = _fresh_label(S.elements)
    table = np.empty((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = S.table
    table[n, :] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    M = FiniteSemigroup(S.elements + (one,), table)
    if h is None:
        return M, None
    return M, Homomorphism(M, h.target, list(h.map) + [h.target.identity])


def _indices(G: FiniteSemigroup, subset: Iterable) -> list[int]:
    return [s if isinstance(s, (int, np.integer)) else G.index(s) for s in subset]


def generate_indices(G: FiniteSemigroup, gens: Iterable[int], mode: str = "semigroup") -> frozenset[int]:
    gens = list(gens)
    if not gens:
        raise EmptyGenerators("generating set is empty")
    if mode == "group":
        if not G.is_group:
            raise GroupModeOnNonGroup("group-mode generation needs a group")
        gens = gens + [int(G.inverses[g]) for g in gens]
    elif mode != "semigroup":
        raise ValueError(f"unknown mode {mode!r}")
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                for p in (int(G.table[a, g]), int(G.table[g, a])):
                    if p not in seen:
                        seen.add(p)
                        new.append(p)
        frontier = new
    return frozenset(seen)


def generate(G: FiniteSemigroup, gens: Iterable, mode: str = "semigroup") -> frozenset[str]:
    """All finite products of ``gens`` (and their inverses in group mode)."""
    idx = generate_indices(G, _indices(G, gens), mode)
    return frozenset(G.elements[i] for i in idx)


def is_generating(G: FiniteSemigroup, gens: Iterable, mode: str = "semigroup") -> bool:
    return len(generate_indices(G, _indices(G, gens), mode)) == len(G)


def restrict_to_image(h: Homomorphism) -> Homomorphism:
    """Replace the target by the subsemigroup ``h(H)`` so the map is onto."""
    if h.is_surjective:
        return h
    image = sorted(set(h.map.tolist()))
    pos = {t: i for i, t in enumerate(image)}
    sub = h.target.table[np.ix_(image, image)]
    table = np.vectorize(pos.__getitem__)(sub)
    T = FiniteSemigroup([h.target.elements[t] for t in image], table)
    return Homomorphism(h.source, T, [pos[int(t)] for t in h.map])


# -- constructors -----------------------------------------------------------

def cyclic_group(n: int, names: Sequence[str] | None = None) -> FiniteSemigroup:
    names = names or [f"g{i}" for i in range(n)]
    a = np.arange(n)
    return FiniteSemigroup(names, (a[:, None] + a[None, :]) % n)


def klein_group(names: Sequence[str] | None = None) -> FiniteSemigroup:
    names = names or ["e", "a", "b", "c"]
    a = np.arange(4)
    return FiniteSemigroup(names, a[:, None] ^ a[None, :])


def left_zero(n: int, names: Sequence[str] | None = None) -> FiniteSemigroup:
    names = names or [f"z{i}" for i in range(n)]
    return FiniteSemigroup(names, np.repeat(np.arange(n)[:, None], n, axis=1))


# -- canonical forms and catalogs -------------------------------------------

def permute_table(table: np.ndarray, perm) -> np.ndarray:
    """Relabel ``i -> perm[i]``."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    return perm[table[np.ix_(inv, inv)]]


def canonical_table(table: np.ndarray) -> bytes:
    """Lexicographically least relabelled table (iso-invariant key)."""
    n = table.shape[0]
    best = None
    for p in itertools.permutations(range(n)):
        t = permute_table(table, p).astype(np.int8).tobytes()
        if best is None or t < best:
            best = t
    return best


def _associative_tables(n: int) -> list[np.ndarray]:
    """Every associative table on ``n`` labelled points (backtracking)."""
    cells = [(a, b) for a in range(n) for b in range(n)]
    T = [[-1] * n for _ in range(n)]
    triples = list(itertools.product(range(n), repeat=3))
    out: list[np.ndarray] = []

    def consistent() -> bool:
        for x, y, z in triples:
            xy = T[x][y]
            yz = T[y][z]
            if xy < 0 or yz < 0:
                continue
            l_ = T[xy][z]
            r_ = T[x][yz]
            if l_ >= 0 and r_ >= 0 and l_ != r_:
                return False
        return True

    def rec(k: int) -> None:
        if k == len(cells):
            out.append(np.array(T, dtype=np.int64))
            return
        a, b = cells[k]
        for v in range(n):
            T[a][b] = v
            if consistent():
                rec(k + 1)
        T[a][b] = -1

    rec(0)
    return out


@lru_cache(maxsize=None)
def labelled_semigroup_tables(n: int) -> tuple[np.ndarray, ...]:
    if n < 1 or n > 4:
        raise OrdhullError(f"semigroup enumeration supports orders 1..4, got {n}")
    return tuple(_associative_tables(n))


@lru_cache(maxsize=None)
def semigroup_catalog(n: int) -> tuple[FiniteSemigroup, ...]:
    """One semigroup per isomorphism class of order ``n`` (n <= 4)."""
    keys = sorted({canonical_table(t) for t in labelled_semigroup_tables(n)})
    names = [f"h{i}" for i in range(n)]
    return tuple(
        FiniteSemigroup(names, np.frombuffer(k, dtype=np.int8).reshape(n, n).astype(np.int64))
        for k in keys
    )


@lru_cache(maxsize=None)
def group_catalog(n: int) -> tuple[FiniteSemigroup, ...]:
    """Groups of order ``n`` <= 4 built directly (cyclic, and Klein for n = 4)."""
    names = [f"h{i}" for i in range(n)]
    if n < 1 or n > 4:
        raise OrdhullError(f"group catalog supports orders 1..4, got {n}")
    out = [cyclic_group(n, names)]
    if n == 4:
        out.append(klein_group(names))
    return tuple(out)


def _set_partitions(n: int):
    def rec(i: int, blocks: list[int], m: int):
        if i == n:
            yield tuple(blocks)
            return
        for b in range(m + 1):
            blocks.append(b)
            yield from rec(i + 1, blocks, max(m, b + 1))
            blocks.pop()

    yield from rec(0, [], 0)


def congruences(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    """Congruences as block labellings (restricted growth strings)."""
    out = []
    t = S.table
    for blocks in _set_partitions(len(S)):
        b = np.asarray(blocks)
        bt = b[t]  # class of a*b
        ok = True
        for a1, a2 in itertools.combinations(range(len(S)), 2):
            if b[a1] != b[a2]:
                continue
            if not (np.array_equal(bt[a1], bt[a2]) and np.array_equal(bt[:, a1], bt[:, a2])):
                ok = False
                break
        if ok:
            out.append(blocks)
    return out


def quotient(S: FiniteSemigroup, blocks: Sequence[int], prefix: str = "t") -> Homomorphism:
    """The epimorphism ``S -> S/~`` for a congruence given as a block labelling."""
    b = np.asarray(blocks)
    k = int(b.max()) + 1
    reps = [int(np.flatnonzero(b == c)[0]) for c in range(k)]
    table = b[S.table[np.ix_(reps, reps)]]
    T = FiniteSemigroup([f"{prefix}{c}" for c in range(k)], table)
    return Homomorphism(S, T, b)


def epimorphisms(S: FiniteSemigroup, prefix: str = "t") -> list[Homomorphism]:
    """All surjective homomorphisms out of ``S`` up to isomorphism of the target."""
    return [quotient(S, blocks, prefix) for blocks in congruences(S)]
