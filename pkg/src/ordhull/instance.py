"""Instances (H, T, h, X, S) and function tables over the completed codomain."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .actions import CarrierAction, OrderedAction, is_free, validate_action
from .algebra import FiniteSemigroup, Homomorphism, restrict_to_image
from .errors import OrdhullError
from .order import BOT, TOP, CompletedPoset


@dataclass(frozen=True)
class FunctionTable:
    """A total map from the carrier into the completed poset (indices)."""

    carrier: tuple[str, ...]
    codomain: CompletedPoset
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.carrier):
            raise OrdhullError("function table must assign a value to every carrier point")
        n = len(self.codomain)
        if any(not 0 <= v < n for v in self.values):
            raise OrdhullError("function value outside the completed poset")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def as_dict(self) -> dict[str, str]:
        return {x: self.codomain.labels[v] for x, v in zip(self.carrier, self.values)}

    def __getitem__(self, x: str) -> str:
        return self.codomain.labels[self.values[self.carrier.index(x)]]


class Instance:
    """A validated problem instance.

    The homomorphism is normalised onto its image, so ``T`` is ``h(H)`` and
    the ordered action is restricted accordingly.
    """

    def __init__(self, hom: Homomorphism, action_X: CarrierAction, action_S: OrderedAction,
                 functions: Mapping[str, FunctionTable] | None = None, name: str = "",
                 demo: dict | None = None):
        if action_X.acting is not hom.source:
            raise OrdhullError("carrier action must be by the homomorphism's source")
        if action_S.acting is not hom.target:
            raise OrdhullError("ordered action must be by the homomorphism's target")
        full = hom
        hom = restrict_to_image(hom)
        if hom is not full:
            keep = [full.target.index(t) for t in hom.target.elements]
            action_S = OrderedAction(hom.target, action_S.codomain, action_S.table[keep])
        validate_action(action_X)
        validate_action(action_S)
        self.hom = hom
        self.H = hom.source
        self.T = hom.target
        self.action_X = action_X
        self.action_S = action_S
        self.C = action_S.codomain
        self.X = action_X.carrier
        self.functions = dict(functions or {})
        self.name = name
        self.demo = demo
        C = self.C
        C._require_complete()

    def __repr__(self) -> str:
        return (f"Instance({self.name or '?'}: |H|={len(self.H)}, |T|={len(self.T)}, "
                f"|X|={len(self.X)}, |C|={len(self.C)})")

    # -- flags ---------------------------------------------------------
    @cached_property
    def flags(self) -> dict[str, bool]:
        return {
            "h_group": self.H.is_group,
            "h_monoid": self.H.is_monoid,
            "t_group": self.T.is_group,
            "t_commutative": self.T.is_commutative,
            "free": is_free(self.action_X),
        }

    # -- index arrays used by the engines ---------------------------------
    @cached_property
    def hx(self) -> np.ndarray:
        """``hx[h, x]``: carrier action."""
        return self.action_X.table

    @cached_property
    def tS(self) -> np.ndarray:
        """``tS[t, s]``: action of T on the completed poset."""
        return self.action_S.table

    @cached_property
    def hS(self) -> np.ndarray:
        """``hS[h, s] = h(h) s``."""
        a = self.tS[self.hom.map]
        a.setflags(write=False)
        return a

    @cached_property
    def hinvS(self) -> np.ndarray | None:
        """``hinvS[h, s] = (h(h))^-1 s``; None unless T is a group."""
        inv = self.T.inverses
        if inv is None:
            return None
        a = self.tS[inv[self.hom.map]]
        a.setflags(write=False)
        return a

    # -- functions -----------------------------------------------------
    def function(self, values: Mapping[str, str] | Sequence) -> FunctionTable:
        """Build a FunctionTable from ``{x: label}`` or a sequence of labels/indices."""
        C = self.C
        if isinstance(values, Mapping):
            missing = [x for x in self.X if x not in values]
            if missing:
                raise OrdhullError(f"function has no value at {missing[0]!r}")
            extra = set(values) - set(self.X)
            if extra:
                raise OrdhullError(f"function mentions unknown carrier points {sorted(extra)}")
            seq = [values[x] for x in self.X]
        else:
            seq = list(values)
        idx = []
        for v in seq:
            if isinstance(v, (int, np.integer)):
                idx.append(int(v))
                continue
            v = str(v)
            if v == BOT and not C.bottom_added:
                raise OrdhullError(f"{BOT} is not available: the poset has a least element")
            if v == TOP and not C.top_added:
                raise OrdhullError(f"{TOP} is not available: the poset has a greatest element")
            idx.append(C.index(v))
        return FunctionTable(self.X, C, tuple(idx))

    def constant(self, value: int) -> FunctionTable:
        return FunctionTable(self.X, self.C, (int(value),) * len(self.X))

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        H, T, C = self.H, self.T, self.C
        base = C.base
        d = {
            "semigroup_H": {
                "elements": list(H.elements),
                "table": [[H.elements[v] for v in row] for row in H.table],
            },
            "semigroup_T": {
                "elements": list(T.elements),
                "table": [[T.elements[v] for v in row] for row in T.table],
            },
            "hom": {h: self.hom(h) for h in H.elements},
            "carrier": list(self.X),
            "action_X": {
                h: {x: self.X[self.hx[i, j]] for j, x in enumerate(self.X)}
                for i, h in enumerate(H.elements)
            },
            "poset_S": {
                "elements": list(base.elements),
                "covers": [list(p) for p in base.covers()],
            },
            "action_S": {
                t: {s: C.labels[self.tS[i, j]] for j, s in enumerate(base.elements)}
                for i, t in enumerate(T.elements)
            },
            "functions": {name: f.as_dict() for name, f in self.functions.items()},
        }
        if self.name:
            d["name"] = self.name
        if self.demo is not None:
            d["demo"] = self.demo
        return d

    @cached_property
    def digest(self) -> str:
        d = self.to_dict()
        d.pop("name", None)
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def with_functions(self, functions: Mapping[str, FunctionTable], name: str | None = None) -> "Instance":
        inst = Instance(self.hom, self.action_X, self.action_S, functions,
                        self.name if name is None else name, self.demo)
        return inst


def build_instance(H: FiniteSemigroup, T: FiniteSemigroup, hom_map, carrier: Sequence[str],
                   carrier_table, C: CompletedPoset, base_action_table, name: str = "") -> Instance:
    """Convenience constructor from raw index tables."""
    hom = Homomorphism(H, T, hom_map)
    ax = CarrierAction(H, carrier, carrier_table)
    aS = OrderedAction.from_base(T, C, base_action_table)
    return Instance(hom, ax, aS, name=name)
