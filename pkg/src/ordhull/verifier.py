"""Instance families, batch statement runs, and the counterexample hunt."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .actions import (CarrierAction, OrderedAction, carrier_actions, is_free, ordered_actions,
                      random_carrier_action, random_ordered_action)
from .algebra import FiniteSemigroup, epimorphisms, group_catalog, semigroup_catalog
from .errors import BoundsTooLarge, OrdhullError
from .instance import Instance
from .order import complete, is_order_complete, poset_catalog
from .statements import STATEMENTS, StatementReport, check_statement, check_statements, statement_id

EXHAUSTIVE_BOUNDS = (4, 3, 4)
RANDOM_BOUNDS = (4, 4, 5)
H_KINDS = ("group", "monoid", "semigroup", "any")


@dataclass(frozen=True)
class InstanceFamily:
    """Bounds ``(|H|, |X|, |S|)`` plus flag constraints.

    ``h_kind``: ``group`` (H a group), ``monoid`` (H has a unit, groups
    included), ``semigroup`` (H *not* a group) or ``any``. ``free``/``commutative_t`` are tri-state: None means no
    constraint. ``t_group`` requires T = h(H) to be a group.
    """

    max_h: int
    max_x: int
    max_s: int
    mode: str = "exhaustive"
    seed: int = 0
    count: int = 100
    h_kind: str = "group"
    t_group: bool = True
    free: bool | None = None
    commutative_t: bool | None = None

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise OrdhullError(f"unknown family mode {self.mode!r}")
        if self.h_kind not in H_KINDS:
            raise OrdhullError(f"unknown h_kind {self.h_kind!r}")
        b = (self.max_h, self.max_x, self.max_s)
        if min(b) < 1:
            raise BoundsTooLarge(f"bounds must be positive, got {b}")
        limit = EXHAUSTIVE_BOUNDS if self.mode == "exhaustive" else RANDOM_BOUNDS
        if any(v > m for v, m in zip(b, limit)):
            raise BoundsTooLarge(f"{self.mode} mode supports bounds up to {limit}, got {b}")
        if self.mode == "random" and self.count < 0:
            raise OrdhullError("count must be nonnegative")


# -- catalogs ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _acting(n: int, kind: str) -> tuple[FiniteSemigroup, ...]:
    if kind == "group":
        return group_catalog(n)
    sgs = semigroup_catalog(n)
    if kind == "semigroup":
        return tuple(s for s in sgs if not s.is_group)
    if kind == "monoid":
        return tuple(s for s in sgs if s.is_monoid)
    return sgs


@lru_cache(maxsize=None)
def complete_posets(n: int) -> tuple:
    return tuple(P for P in poset_catalog(n) if is_order_complete(P).ok)


@lru_cache(maxsize=None)
def _epis(H: FiniteSemigroup) -> tuple:
    return tuple(epimorphisms(H))


@lru_cache(maxsize=None)
def _carrier_actions(H: FiniteSemigroup, n: int) -> tuple:
    return tuple(carrier_actions(H, n, dedupe=True))


@lru_cache(maxsize=None)
def _ordered_actions(T: FiniteSemigroup, P) -> tuple:
    return tuple(ordered_actions(T, P, dedupe=True))


def _hom_ok(fam: InstanceFamily, hom) -> bool:
    T = hom.target
    if fam.t_group and not T.is_group:
        return False
    if fam.commutative_t is not None and T.is_commutative != fam.commutative_t:
        return False
    return True


def _action_ok(fam: InstanceFamily, ax: CarrierAction) -> bool:
    return fam.free is None or is_free(ax) == fam.free


def _carrier(n: int) -> list[str]:
    return [f"x{i}" for i in range(n)]


def _build(hom, ax_table, P, as_table, name: str) -> Instance:
    C = complete(P)
    ax = CarrierAction(hom.source, _carrier(ax_table.shape[1]), ax_table)
    aS = OrderedAction.from_base(hom.target, C, as_table)
    return Instance(hom, ax, aS, name=name)


def _exhaustive(fam: InstanceFamily) -> Iterator[Instance]:
    k = 0
    for nh in range(1, fam.max_h + 1):
        for H in _acting(nh, fam.h_kind):
            for hom in _epis(H):
                if not _hom_ok(fam, hom):
                    continue
                for nx in range(1, fam.max_x + 1):
                    for ax_table in _carrier_actions(H, nx):
                        if not _action_ok(fam, CarrierAction(H, _carrier(nx), ax_table)):
                            continue
                        for ns in range(1, fam.max_s + 1):
                            for P in complete_posets(ns):
                                for as_table in _ordered_actions(hom.target, P):
                                    yield _build(hom, ax_table, P, as_table, f"family-{k:06d}")
                                    k += 1


def _random(fam: InstanceFamily) -> Iterator[Instance]:
    rng = np.random.default_rng(fam.seed)
    sizes_h = [n for n in range(1, fam.max_h + 1) if _acting(n, fam.h_kind)]
    if not sizes_h:
        return
    produced = 0
    attempts = 0
    while produced < fam.count:
        attempts += 1
        if attempts > 1000 * (fam.count + 1):
            raise OrdhullError("family constraints are too restrictive to sample from")
        nh = int(rng.choice(sizes_h))
        pool = _acting(nh, fam.h_kind)
        H = pool[int(rng.integers(len(pool)))]
        homs = [h for h in _epis(H) if _hom_ok(fam, h)]
        if not homs:
            continue
        hom = homs[int(rng.integers(len(homs)))]
        nx = int(rng.integers(1, fam.max_x + 1))
        ax_table = random_carrier_action(H, nx, rng)
        if not _action_ok(fam, CarrierAction(H, _carrier(nx), ax_table)):
            continue
        ns = int(rng.integers(1, fam.max_s + 1))
        posets = complete_posets(ns)
        P = posets[int(rng.integers(len(posets)))]
        as_table = random_ordered_action(hom.target, P, rng)
        yield _build(hom, ax_table, P, as_table, f"random-{fam.seed}-{produced:06d}")
        produced += 1


def enumerate_instances(family: InstanceFamily) -> Iterator[Instance]:
    """Deterministic stream of instances of ``family``."""
    if family.mode == "exhaustive":
        return _exhaustive(family)
    return _random(family)


# -- suites -----------------------------------------------------------------

def run_suite(inst: Instance, f_mode: str | int = "all", seed: int = 0,
              engine: str = "fast") -> list[StatementReport]:
    """Every statement on ``inst``; ``f_mode`` is ``"all"`` or a sample size."""
    if f_mode == "all":
        from .envelope import workspace
        fs = workspace(inst).tables
        return check_statements(inst, STATEMENTS, f=fs, engine=engine, seed=seed)
    return check_statements(inst, STATEMENTS, engine=engine, seed=seed, sample=int(f_mode))


# -- hunt -------------------------------------------------------------------

@dataclass
class HuntResult:
    stmt: str
    instance: Instance
    function: dict | None
    witness: dict
    part: str
    violation: bool
    index: int
    confirmed: bool = False

    def to_record(self) -> dict:
        return {
            "stmt": self.stmt,
            "index": self.index,
            "instance": self.instance.name,
            "digest": self.instance.digest,
            "part": self.part,
            "violation": self.violation,
            "function": self.function,
            "witness": self.witness,
            "confirmed": self.confirmed,
        }


@dataclass
class HuntSummary:
    results: list[HuntResult]
    examined: int
    unconfirmed: int = 0
    targets: tuple[str, ...] = field(default_factory=tuple)


def confirm(inst: Instance, report: StatementReport, seed: int = 0) -> bool:
    """Replay a failing report on the reference engine; True if it fails there too."""
    w = report.witness or {}
    f = w.get("f")
    replay = check_statement(inst, report.stmt, f=f, engine="reference", seed=seed)
    return replay.verdict == "fails" and w.get("part") in (replay.violations + replay.findings)


def hunt(family: InstanceFamily, targets: Iterable[str], budget: int, seed: int = 0,
         f_sample: int | None = None) -> HuntSummary:
    """Examine up to ``budget`` instances, keep failures confirmed by the reference engine."""
    targets = tuple(statement_id(t) for t in targets)
    if not targets:
        raise OrdhullError("hunt needs at least one target statement")
    if budget < 0:
        raise OrdhullError("budget must be nonnegative")
    results: list[HuntResult] = []
    unconfirmed = 0
    examined = 0
    stream = enumerate_instances(family)
    for idx, inst in enumerate(itertools.islice(stream, budget)):
        examined += 1
        reports = check_statements(inst, targets, seed=seed, sample=f_sample)
        for rep in reports:
            if rep.verdict != "fails":
                continue
            if not confirm(inst, rep, seed):
                unconfirmed += 1
                continue
            w = dict(rep.witness or {})
            results.append(HuntResult(rep.stmt, inst, w.get("f"), w, w.get("part", ""),
                                      bool(rep.violations), idx, True))
    return HuntSummary(results, examined, unconfirmed, targets)


def write_findings(results: Iterable[HuntResult], out_dir: str | Path) -> list[Path]:
    """One replayable instance file per finding plus ``findings.jsonl``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    lines = []
    for i, res in enumerate(results):
        inst = res.instance
        if res.function is not None:
            inst = inst.with_functions({"witness": inst.function(res.function)},
                                       name=f"finding-{i:04d}-{res.stmt}")
        d = inst.to_dict()
        path = out / f"finding-{i:04d}-{res.stmt.lower()}.json"
        path.write_text(json.dumps(d, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        paths.append(path)
        rec = res.to_record()
        rec["file"] = path.name
        lines.append(json.dumps(rec, sort_keys=True, ensure_ascii=False))
    (out / "findings.jsonl").write_text("".join(l + "\n" for l in lines), encoding="utf-8")
    return paths


# -- isomorphism --------------------------------------------------------------

def _semigroup_isos(A: FiniteSemigroup, B: FiniteSemigroup):
    if len(A) != len(B):
        return
    for p in itertools.permutations(range(len(A))):
        pa = np.array(p)
        if np.array_equal(pa[A.table], B.table[np.ix_(pa, pa)]):
            yield pa


def find_isomorphism(a: Instance, fa: dict | None, b: Instance, fb: dict | None) -> dict | None:
    """Bijections of H, T, X and S carrying ``(a, fa)`` onto ``(b, fb)``, or None.

    Brute force over permutations; meant for the tiny instances the hunt emits.
    """
    if (len(a.H), len(a.T), len(a.X), len(a.C)) != (len(b.H), len(b.T), len(b.X), len(b.C)):
        return None
    ka, kb = len(a.C.base), len(b.C.base)
    if ka != kb or a.C.bottom_added != b.C.bottom_added or a.C.top_added != b.C.top_added:
        return None
    va = a.function(fa).array if fa is not None else None
    vb = b.function(fb).array if fb is not None else None
    for ph in _semigroup_isos(a.H, b.H):
        for pt in _semigroup_isos(a.T, b.T):
            if not np.array_equal(pt[a.hom.map], b.hom.map[ph]):
                continue
            for px in itertools.permutations(range(len(a.X))):
                px = np.array(px)
                # px[h x] == (ph h) (px x)
                if not np.array_equal(px[a.hx], b.hx[ph][:, px]):
                    continue
                for ps in itertools.permutations(range(ka)):
                    pc = np.array(list(ps) + list(range(ka, len(a.C))))
                    if not np.array_equal(a.C.leq, b.C.leq[np.ix_(pc, pc)]):
                        continue
                    if not np.array_equal(pc[a.tS], b.tS[pt][:, pc]):
                        continue
                    if va is not None and not np.array_equal(pc[va], vb[px]):
                        continue
                    return {"H": ph.tolist(), "T": pt.tolist(), "X": px.tolist(), "S": pc.tolist()}
    return None
