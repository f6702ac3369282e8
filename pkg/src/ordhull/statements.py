"""Executable versions of the structural results about envelopes.

Each statement is split into *parts*; every part declares the instance flags
it assumes (``h_group``, ``h_monoid``, ``t_group``, ``t_commutative``,
``free``). A part is always evaluated when it is computable. A failing part
whose assumptions hold is a *violation*; a failing part with an unmet
assumption is a *finding* (the statement was probed outside its hypotheses).

Function-parameterized statements take a batch of tables and run vectorized
on either engine: ``"fast"`` (:class:`~ordhull.envelope.Workspace`) or
``"reference"`` (:class:`~ordhull.reference.ReferenceEngine`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .algebra import generate_indices
from .envelope import CLASS_INDEX, workspace
from .errors import EnumerationTooLarge, OrdhullError, UnknownStatement
from .instance import FunctionTable, Instance
from .kernels import all_tables
from .reference import ReferenceEngine

STATEMENTS = (
    "LEMMA1", "PROP1", "COR1", "CHAIN_E",
    "THM1_L", "THM1_U", "THM1_EQUIV",
    "THM2_L", "THM2_U", "THM2_LU",
    "PROP3", "THM3_I", "THM3_II", "THM3_III",
    "PROP4", "THM4", "TASK1L", "FACTS212",
)
FLAGS = ("h_group", "h_monoid", "t_group", "t_commutative", "free")

# all tables are used as the default batch up to this many, a seeded sample beyond
ALL_TABLES_LIMIT = 4096
DEFAULT_SAMPLE = 512
SUBSET_LIMIT = 12
PAIR_CHUNK = 1 << 20

HG, HGC, SUB, SUPER = (CLASS_INDEX[c] for c in ("HG", "HGC", "SUB", "SUPER"))


@dataclass
class PartResult:
    requires: tuple[str, ...]
    met: bool
    checked: int = 0
    failed: int = 0

    def to_record(self) -> dict:
        return {"requires": list(self.requires), "met": self.met,
                "checked": self.checked, "failed": self.failed}


@dataclass
class StatementReport:
    stmt: str
    verdict: str                      # holds | fails | skipped
    hypotheses: dict[str, bool]
    parts: dict[str, PartResult] = field(default_factory=dict)
    witness: dict | None = None
    note: str = ""

    @property
    def hypotheses_met(self) -> bool:
        return all(p.met for p in self.parts.values()) if self.parts else False

    @property
    def checked(self) -> int:
        return sum(p.checked for p in self.parts.values())

    @property
    def violations(self) -> list[str]:
        """Failing parts whose assumptions all hold."""
        return [k for k, p in self.parts.items() if p.failed and p.met]

    @property
    def findings(self) -> list[str]:
        """Failing parts evaluated outside their assumptions."""
        return [k for k, p in self.parts.items() if p.failed and not p.met]

    def to_record(self) -> dict:
        return {
            "stmt": self.stmt,
            "verdict": self.verdict,
            "hypotheses_met": self.hypotheses_met,
            "hypotheses": dict(self.hypotheses),
            "checked": self.checked,
            "parts": {k: p.to_record() for k, p in self.parts.items()},
            "violations": self.violations,
            "findings": self.findings,
            "witness": self.witness,
            "note": self.note,
        }


class _Run:
    """Accumulates part results and the first witness of one statement."""

    def __init__(self, stmt: str, inst: Instance, fs: np.ndarray):
        self.stmt = stmt
        self.inst = inst
        self.fs = fs
        self.flags = dict(inst.flags)
        self.parts: dict[str, PartResult] = {}
        self.witness: dict | None = None
        self.skip_note = ""

    def part(self, name: str, *requires: str) -> PartResult:
        p = self.parts.get(name)
        if p is None:
            p = self.parts[name] = PartResult(tuple(requires), all(self.flags[r] for r in requires))
        return p

    def check(self, name: str, requires: tuple[str, ...], ok, rows: np.ndarray | None = None,
              extra: Callable[[int, int | None], dict] | None = None, with_f: bool = True) -> None:
        """Record ``ok`` (shape (F,) or (F, X)) for ``rows`` of the batch (default: all)."""
        p = self.part(name, *requires)
        ok = np.asarray(ok, dtype=bool)
        if ok.ndim == 2:
            bad_x = ~ok
            ok = ok.all(axis=1)
        else:
            bad_x = None
        p.checked += int(ok.size)
        bad = np.flatnonzero(~ok)
        p.failed += int(bad.size)
        if bad.size and self.witness is None:
            i = int(bad[0])
            w = {"part": name}
            row = int(rows[i]) if rows is not None else i
            if with_f and self.fs is not None and self.fs.size:
                w["f"] = self.label_row(self.fs[row])
            x = None
            if bad_x is not None:
                x = int(np.flatnonzero(bad_x[i])[0])
                w["x"] = self.inst.X[x]
            if extra is not None:
                w.update(extra(i, x))
            self.witness = w

    def label_row(self, row) -> dict[str, str]:
        labels = self.inst.C.labels
        return {x: labels[int(v)] for x, v in zip(self.inst.X, row)}

    def report(self) -> StatementReport:
        hyps = {k: self.flags[k] for k in FLAGS}
        if self.skip_note:
            return StatementReport(self.stmt, "skipped", hyps, self.parts, None, self.skip_note)
        verdict = "fails" if any(p.failed for p in self.parts.values()) else "holds"
        return StatementReport(self.stmt, verdict, hyps, self.parts, self.witness)


class _Batch:
    """Lazily computed envelopes / regularizations of one batch, shared across statements."""

    def __init__(self, engine, fs: np.ndarray):
        self.engine = engine
        self.fs = fs
        self._lower: dict[str, np.ndarray] = {}
        self._upper: dict[str, np.ndarray] = {}

    @cached_property
    def classes(self) -> np.ndarray:
        return self.engine.classify(self.fs)

    def lower(self, cls: str) -> np.ndarray:
        if cls not in self._lower:
            self._lower[cls] = self.engine.lower(self.fs, cls)
        return self._lower[cls]

    def upper(self, cls: str) -> np.ndarray:
        if cls not in self._upper:
            self._upper[cls] = self.engine.upper(self.fs, cls)
        return self._upper[cls]

    @cached_property
    def fmin(self) -> np.ndarray:
        return self.engine.reg_min(self.fs)

    @cached_property
    def fmax(self) -> np.ndarray:
        return self.engine.reg_max(self.fs)


def _eq_rows(a, b) -> np.ndarray:
    return (a == b).all(axis=1)


# -- statements --------------------------------------------------------------

def _lemma1(r: _Run, b: _Batch, rng) -> None:
    eng, inst = b.engine, r.inst
    n = len(inst.C)
    tS = inst.tS
    if n <= SUBSET_LIMIT:
        masks = range(1 << n)
    else:
        masks = sorted(set(rng.integers(0, 1 << n, size=4096).tolist()) | {0})
    subsets = [[i for i in range(n) if m >> i & 1] for m in masks]
    leq = inst.C.leq
    sup_ineq, inf_ineq, sup_eq, inf_eq, info = [], [], [], [], []
    for t in range(len(inst.T)):
        for A in subsets:
            s_img = eng.set_sup([int(tS[t, a]) for a in A])
            t_sup = int(tS[t, eng.set_sup(A)])
            i_img = eng.set_inf([int(tS[t, a]) for a in A])
            t_inf = int(tS[t, eng.set_inf(A)])
            sup_ineq.append(leq[s_img, t_sup])
            inf_ineq.append(leq[t_inf, i_img])
            sup_eq.append(s_img == t_sup)
            inf_eq.append(i_img == t_inf)
            info.append((t, A))

    def extra(i, _x):
        t, A = info[i]
        return {"t": inst.T.elements[t], "subset": [inst.C.labels[a] for a in A]}

    r.fs = None
    r.check("sup_ineq", (), sup_ineq, extra=extra)
    r.check("inf_ineq", (), inf_ineq, extra=extra)
    r.check("sup_eq", ("t_group",), sup_eq, extra=extra)
    r.check("inf_eq", ("t_group",), inf_eq, extra=extra)


class _PairRows:
    """Maps a flat pair index back to (batch row, member) without materializing both."""

    def __init__(self, rows, first, n_members):
        self.rows = rows
        self.first = first
        self.ends = np.cumsum(n_members - first)

    def _locate(self, i: int) -> tuple[int, int]:
        k = int(np.searchsorted(self.ends, i, side="right"))
        before = int(self.ends[k - 1]) if k else 0
        return k, int(self.first[k]) + i - before

    def __getitem__(self, i: int) -> int:
        return int(self.rows[self._locate(i)[0]])

    def member(self, i: int) -> int:
        return self._locate(i)[1]


def _closure(r: _Run, b: _Batch, name: str, requires, cls: int, cls_name: str, op: str) -> None:
    eng = b.engine
    inside = np.flatnonzero(b.classes[:, cls])
    members = eng.candidates(cls_name)
    unit = r.inst.C.bottom if op == "join" else r.inst.C.top
    empty = np.full((1, len(r.inst.X)), unit, dtype=np.int64)
    r.check(name, requires, eng.classify(empty)[:, cls], with_f=False,
            extra=lambda i, x: {"family": "empty"})
    if not len(members) or not len(inside):
        return
    combine = eng.pjoin if op == "join" else eng.pmeet
    # join/meet are commutative and every row in ``inside`` is itself a member,
    # so each row only needs pairing with the members from its own position on
    weights = len(r.inst.C) ** np.arange(len(r.inst.X), dtype=np.int64)
    mcodes = members @ weights
    order = np.argsort(mcodes, kind="stable")
    members, mcodes = members[order], mcodes[order]
    start = np.searchsorted(mcodes, b.fs[inside] @ weights)
    step = max(1, PAIR_CHUNK // max(1, len(members) * len(r.inst.X)))
    for lo in range(0, len(inside), step):
        rows, first = inside[lo:lo + step], start[lo:lo + step]
        if hasattr(eng, "closed_pairs"):
            ok = eng.closed_pairs(b.fs[rows], first, members, op, cls_name)
        else:
            counts = len(members) - first
            offs = np.repeat(np.cumsum(counts) - counts, counts)
            mem_idx = np.arange(counts.sum()) - offs + np.repeat(first, counts)
            ok = eng.classify(combine(b.fs[np.repeat(rows, counts)], members[mem_idx]))[:, cls]
        pairs = _PairRows(rows, first, len(members))
        r.check(name, requires, ok, rows=pairs,
                extra=lambda i, _x, pairs=pairs: {"g": r.label_row(members[pairs.member(i)])})


def _prop1(r: _Run, b: _Batch, rng) -> None:
    _closure(r, b, "sub_sup", (), SUB, "SUB", "join")
    _closure(r, b, "super_inf", (), SUPER, "SUPER", "meet")
    _closure(r, b, "hgc_sup", ("t_group",), HGC, "HGC", "join")
    _closure(r, b, "hgc_inf", ("t_group",), HGC, "HGC", "meet")


def _cor1(r: _Run, b: _Batch, rng) -> None:
    eng = b.engine
    for cls in ("HG", "HGC", "SUB"):
        r.check(f"lower_{cls.lower()}_in_sub", (), eng.classify(b.lower(cls))[:, SUB])
    for cls in ("HG", "HGC", "SUPER"):
        r.check(f"upper_{cls.lower()}_in_super", (), eng.classify(b.upper(cls))[:, SUPER])
    for side, cls in (("lower", "HG"), ("lower", "HGC"), ("upper", "HG"), ("upper", "HGC")):
        env = b.lower(cls) if side == "lower" else b.upper(cls)
        r.check(f"{side}_{cls.lower()}_in_hgc", ("t_group",), eng.classify(env)[:, HGC])


def _chain(r: _Run, b: _Batch, rng) -> None:
    leq = r.inst.C.leq
    seq = [b.lower("HG"), b.lower("HGC"), b.lower("SUB"), b.fs,
           b.upper("SUPER"), b.upper("HGC"), b.upper("HG")]
    ok = np.ones(b.fs.shape, dtype=bool)
    for lo, hi in zip(seq, seq[1:]):
        ok &= leq[lo, hi]
    r.check("chain", (), ok)
    hom = np.flatnonzero(b.classes[:, HG])
    eq = np.ones((len(hom), b.fs.shape[1]), dtype=bool)
    for env in seq:
        eq &= env[hom] == b.fs[hom]
    r.check("collapse", (), eq, rows=hom)


def _thm1_l(r: _Run, b: _Batch, rng) -> None:
    r.check("iff", (), _eq_rows(b.lower("SUB"), b.fs) == b.classes[:, SUB])


def _thm1_u(r: _Run, b: _Batch, rng) -> None:
    r.check("iff", (), _eq_rows(b.upper("SUPER"), b.fs) == b.classes[:, SUPER])


def _thm1_equiv(r: _Run, b: _Batch, rng) -> None:
    one = b.classes[:, HGC]
    two = _eq_rows(b.lower("HGC"), b.fs)
    three = _eq_rows(b.upper("HGC"), b.fs)
    r.check("equiv", ("t_group",), (one == two) & (two == three))


def _symbol_flags(inst: Instance, rows: np.ndarray, lower: bool):
    """(avoids the synthetic extreme, is constantly the synthetic extreme) per row."""
    C = inst.C
    added = C.bottom_added if lower else C.top_added
    sym = C.bottom if lower else C.top
    if not added:
        return np.ones(len(rows), dtype=bool), np.zeros(len(rows), dtype=bool)
    return ~(rows == sym).any(axis=1), (rows == sym).all(axis=1)


THM2_HYP = ("h_group", "t_group", "free")


def _thm2_side(r: _Run, b: _Batch, lower: bool) -> None:
    env = b.lower("HG") if lower else b.upper("HG")
    avoids, const = _symbol_flags(r.inst, b.fs, lower)
    c1 = avoids & b.classes[:, HGC]
    r.check("iff", THM2_HYP, _eq_rows(env, b.fs) == (c1 | const),
            extra=lambda i, x: {"envelope": r.label_row(env[i]),
                                "cond1": bool(c1[i]), "cond2": bool(const[i])})
    r.check("exclusive", THM2_HYP, ~(c1 & const))


def _thm2_l(r, b, rng):
    _thm2_side(r, b, True)


def _thm2_u(r, b, rng):
    _thm2_side(r, b, False)


def _thm2_lu(r: _Run, b: _Batch, rng) -> None:
    lo, up = b.lower("HG"), b.upper("HG")
    r.check("iff", THM2_HYP, (_eq_rows(lo, b.fs) & _eq_rows(up, b.fs)) == b.classes[:, HG],
            extra=lambda i, x: {"lower": r.label_row(lo[i]), "upper": r.label_row(up[i])})


def _needs_t_group(r: _Run) -> bool:
    if not r.flags["t_group"]:
        r.skip_note = "regularization is undefined: T = h(H) is not a group"
        return False
    return True


def _prop3(r: _Run, b: _Batch, rng) -> None:
    if not _needs_t_group(r):
        return
    eng = b.engine
    cmin, cmax = eng.classify(b.fmin), eng.classify(b.fmax)
    r.check("min_in_super", (), cmin[:, SUPER])
    r.check("max_in_sub", (), cmax[:, SUB])
    r.check("both_in_hgc", ("h_group",), cmin[:, HGC] & cmax[:, HGC])


def _thm3_i(r: _Run, b: _Batch, rng) -> None:
    if not _needs_t_group(r):
        return
    leq = r.inst.C.leq
    r.check("bounds", ("h_monoid",), leq[b.fmin, b.fs] & leq[b.fs, b.fmax])
    r.check("lower_eq", ("h_group",), b.lower("HGC") == b.fmin,
            extra=lambda i, x: {"envelope": r.label_row(b.lower("HGC")[i]), "reg": r.label_row(b.fmin[i])})
    r.check("upper_eq", ("h_group",), b.upper("HGC") == b.fmax,
            extra=lambda i, x: {"envelope": r.label_row(b.upper("HGC")[i]), "reg": r.label_row(b.fmax[i])})


def _thm3_side(r: _Run, b: _Batch, lower: bool) -> None:
    if not _needs_t_group(r):
        return
    reg = b.fmin if lower else b.fmax
    env = b.lower("HG") if lower else b.upper("HG")
    c1, c2 = _symbol_flags(r.inst, reg, lower)
    req = ("h_group", "free")
    r.check("iff", req, _eq_rows(env, reg) == (c1 | c2),
            extra=lambda i, x: {"envelope": r.label_row(env[i]), "reg": r.label_row(reg[i])})
    r.check("exclusive", req, ~(c1 & c2))


def _thm3_ii(r, b, rng):
    _thm3_side(r, b, True)


def _thm3_iii(r, b, rng):
    _thm3_side(r, b, False)


def _prop4(r: _Run, b: _Batch, rng) -> None:
    eng, inst = b.engine, r.inst
    for t in range(len(inst.T)):
        g = eng.act(t, b.fs)
        cg = eng.classify(g)
        for name, col in (("sub", SUB), ("super", SUPER), ("hg", HG), ("hgc", HGC)):
            rows = np.flatnonzero(b.classes[:, col])
            r.check(name, ("t_commutative",), cg[rows, col], rows=rows,
                    extra=lambda i, x, t=t, g=g, rows=rows: {"t": inst.T.elements[t],
                                                             "tf": r.label_row(g[rows[i]])})


def generating_subsets(inst: Instance, mode: str) -> list[tuple[int, ...]]:
    """Every nonempty subset of H generating it in ``mode`` (cached on the instance)."""
    cache = inst.__dict__.setdefault("_gensets", {})
    if mode not in cache:
        H = inst.H
        out = []
        if mode == "semigroup" or H.is_group:
            for k in range(1, len(H) + 1):
                for sub in itertools.combinations(range(len(H)), k):
                    if len(generate_indices(H, sub, mode)) == len(H):
                        out.append(sub)
        cache[mode] = out
    return cache[mode]


def _thm4(r: _Run, b: _Batch, rng) -> None:
    eng, inst = b.engine, r.inst
    allh = range(len(inst.H))
    for rel in ("<=", ">=", "="):
        full = eng.holds_on(b.fs, allh, rel)
        for gens in generating_subsets(inst, "semigroup"):
            r.check("semigroup_generators", (), eng.holds_on(b.fs, gens, rel) == full,
                    extra=lambda i, x, gens=gens, rel=rel: {
                        "generators": [inst.H.elements[h] for h in gens], "relation": rel})
    if inst.H.is_group:
        for gens in generating_subsets(inst, "group"):
            r.check("group_generators", ("h_group",), eng.holds_on(b.fs, gens, "=") == b.classes[:, HGC],
                    extra=lambda i, x, gens=gens: {
                        "generators": [inst.H.elements[h] for h in gens], "relation": "="})
    else:
        r.part("group_generators", "h_group")


def _task1l(r: _Run, b: _Batch, rng) -> None:
    if not _needs_t_group(r):
        return
    C = r.inst.C
    lo_c, up_c = b.lower("HGC"), b.upper("HGC")
    r.check("hgc_lower", ("h_group",), (lo_c != C.bottom).any(1) == (b.fmin != C.bottom).any(1))
    r.check("hgc_upper", ("h_group",), (up_c != C.top).any(1) == (b.fmax != C.top).any(1))
    lo, up = b.lower("HG"), b.upper("HG")
    if C.bottom_added:
        pred_lo = ~(b.fmin == C.bottom).any(1)
    else:
        pred_lo = (b.fmin != C.bottom).any(1)
    if C.top_added:
        pred_up = ~(b.fmax == C.top).any(1)
    else:
        pred_up = (b.fmax != C.top).any(1)
    r.check("hg_lower", ("h_group", "free"), (lo != C.bottom).any(1) == pred_lo,
            extra=lambda i, x: {"envelope": r.label_row(lo[i]), "reg": r.label_row(b.fmin[i])})
    r.check("hg_upper", ("h_group", "free"), (up != C.top).any(1) == pred_up,
            extra=lambda i, x: {"envelope": r.label_row(up[i]), "reg": r.label_row(b.fmax[i])})


def _facts212(r: _Run, b: _Batch, rng) -> None:
    inst = r.inst
    rows = np.flatnonzero(b.classes[:, HGC])
    if not len(rows):
        r.skip_note = "no function of the batch is homogeneous with values in the completion"
        return
    fs = b.fs[rows]
    n = len(inst.C)
    nx = len(inst.X)
    hx, tS = inst.hx, inst.tS
    F = len(fs)
    img = np.zeros((F, nx, n), dtype=bool)       # f(Hx)
    orb = np.zeros((F, nx, n), dtype=bool)       # T f(x)
    fi = np.arange(F)[:, None]
    xi = np.arange(nx)[None, :]
    for h in range(hx.shape[0]):
        img[fi, xi, fs[:, hx[h]]] = True
    for t in range(tS.shape[0]):
        orb[fi, xi, tS[t][fs]] = True
    stat_s = (tS == np.arange(n)[None, :]).all(axis=0)
    stat_x = (hx == np.arange(nx)[None, :]).all(axis=0)
    single = img.sum(axis=2) == 1
    req = ("t_group",)
    r.check("inclusion", req, ~(img & ~orb).any(axis=2), rows=rows)
    r.check("stationary_value", req, ~stat_s[fs] | single, rows=rows)
    r.check("equality", req, (img == orb).all(axis=2), rows=rows)
    r.check("stationary_transfer", req, ~stat_x[None, :] | stat_s[fs], rows=rows)


_DISPATCH: dict[str, Callable] = {
    "LEMMA1": _lemma1, "PROP1": _prop1, "COR1": _cor1, "CHAIN_E": _chain,
    "THM1_L": _thm1_l, "THM1_U": _thm1_u, "THM1_EQUIV": _thm1_equiv,
    "THM2_L": _thm2_l, "THM2_U": _thm2_u, "THM2_LU": _thm2_lu,
    "PROP3": _prop3, "THM3_I": _thm3_i, "THM3_II": _thm3_ii, "THM3_III": _thm3_iii,
    "PROP4": _prop4, "THM4": _thm4, "TASK1L": _task1l, "FACTS212": _facts212,
}
# statements that ignore the function batch
NO_FUNCTION = frozenset({"LEMMA1"})


def statement_id(stmt: str) -> str:
    s = str(stmt).strip().upper()
    if s not in _DISPATCH:
        raise UnknownStatement(f"unknown statement {stmt!r}; known: {', '.join(STATEMENTS)}")
    return s


def engine_for(inst: Instance, engine: str = "fast"):
    if engine == "fast":
        return workspace(inst)
    if engine == "reference":
        ref = inst.__dict__.get("_reference")
        if ref is None:
            ref = inst.__dict__["_reference"] = ReferenceEngine(inst)
        return ref
    raise OrdhullError(f"unknown engine {engine!r}")


def function_batch(inst: Instance, f=None, seed: int = 0, sample: int | None = None) -> np.ndarray:
    """Normalize ``f`` to an ``(F, |X|)`` batch.

    ``None`` means every table when there are at most :data:`ALL_TABLES_LIMIT`
    of them (or ``sample`` is None and they fit), otherwise ``sample`` tables
    drawn with ``seed``.
    """
    n, nx = len(inst.C), len(inst.X)
    if f is None:
        total = n ** nx
        if sample is None and total <= ALL_TABLES_LIMIT:
            return all_tables(n, nx)
        k = DEFAULT_SAMPLE if sample is None else int(sample)
        rng = np.random.default_rng(seed)
        drawn = rng.integers(0, n, size=(k, nx), dtype=np.int64)
        # the constant extremes are always homogeneous for group T; keep them in every sample
        ends = np.array([[inst.C.bottom] * nx, [inst.C.top] * nx], dtype=np.int64)
        return np.vstack([ends, drawn])
    if isinstance(f, FunctionTable):
        return f.array[None, :]
    if isinstance(f, dict):
        return inst.function(f).array[None, :]
    arr = np.atleast_2d(np.asarray(f, dtype=np.int64))
    if arr.shape[1] != nx or arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        raise OrdhullError(f"function batch must be (F, {nx}) with values below {n}")
    return arr


def _evaluate(inst: Instance, stmt: str, batch: _Batch, seed: int) -> StatementReport:
    r = _Run(stmt, inst, batch.fs)
    rng = np.random.default_rng(seed)
    try:
        _DISPATCH[stmt](r, batch, rng)
    except EnumerationTooLarge as e:
        r.skip_note = str(e)
    return r.report()


def check_statement(inst: Instance, stmt: str, f=None, engine: str = "fast", seed: int = 0,
                    sample: int | None = None) -> StatementReport:
    """Evaluate one statement on ``inst`` for ``f`` (a table, a batch, or None for all/sampled)."""
    stmt = statement_id(stmt)
    fs = function_batch(inst, f, seed, sample)
    return _evaluate(inst, stmt, _Batch(engine_for(inst, engine), fs), seed)


def check_statements(inst: Instance, stmts=STATEMENTS, f=None, engine: str = "fast", seed: int = 0,
                     sample: int | None = None) -> list[StatementReport]:
    """Like :func:`check_statement` for several statements, sharing envelope computations."""
    ids = [statement_id(s) for s in stmts]
    fs = function_batch(inst, f, seed, sample)
    batch = _Batch(engine_for(inst, engine), fs)
    return [_evaluate(inst, s, batch, seed) for s in ids]
