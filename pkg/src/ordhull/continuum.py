"""Truncated numeric models of homogeneity on the real line.

Three models of a group acting on the carrier with a multiplier on values:

* ``pos``     -- ``h in ]0, inf[`` acts by ``x -> h x``, multiplier ``h**p``
* ``bounded`` -- the same restricted to powers of ``r0``
* ``exp``     -- shifts ``x -> h + x``, multiplier ``exp(p h)``

The regularized minorant over a finite sample ``Hs`` of the group,
``min_{h in Hs} f(h.x) / mult(h)``, is an upper bound for the true infimum
(the truncation only removes terms); dually for the majorant.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from typing import Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DomainEscape, OrdhullError

KINDS = ("pos", "bounded", "exp")
DEFAULT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RealModel:
    kind: str
    p: float
    sample_H: tuple[float, ...]
    sample_X: tuple[float, ...]
    r0: float | None = None
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OrdhullError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        if not self.tolerance > 0:
            raise OrdhullError("tolerance must be positive")
        H = np.asarray(self.sample_H, dtype=float)
        X = np.asarray(self.sample_X, dtype=float)
        if H.size == 0 or X.size == 0:
            raise OrdhullError("sample_H and sample_X must be nonempty")
        if not (np.isfinite(H).all() and np.isfinite(X).all()):
            raise OrdhullError("samples must be finite")
        if self.kind == "exp":
            ident, inv = 0.0, -H
        else:
            if (H <= 0).any():
                raise OrdhullError("multiplicative samples must be positive")
            ident, inv = 1.0, 1.0 / H
            if (X <= 0).any():
                raise DomainEscape("carrier samples must lie in ]0, inf[")
        if not np.isclose(H, ident, rtol=self.tolerance, atol=self.tolerance).any():
            raise OrdhullError("sample_H must contain the identity")
        close = np.isclose(inv[:, None], H[None, :], rtol=self.tolerance, atol=self.tolerance)
        if not close.any(axis=1).all():
            raise OrdhullError("sample_H must be closed under inversion")
        if self.kind == "bounded":
            if self.r0 is None or not self.r0 > 0 or self.r0 == 1:
                raise OrdhullError("bounded model needs r0 > 0, r0 != 1")
            k = np.log(H) / math.log(self.r0)
            if not np.allclose(k, np.round(k), rtol=0, atol=1e-9):
                raise OrdhullError("bounded model samples must be integer powers of r0")

    # -- the action ------------------------------------------------------------
    def act(self, h, x):
        return h + x if self.kind == "exp" else h * x

    def multiplier(self, h):
        return np.exp(self.p * h) if self.kind == "exp" else np.power(h, self.p)

    def in_domain(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        ok = np.isfinite(x)
        return ok if self.kind == "exp" else ok & (x > 0)


def pos_homog(p: float, exponents: Sequence[int] | range, base: float = 2.0,
              sample_X: Sequence[float] = (), tolerance: float = DEFAULT_TOLERANCE) -> RealModel:
    """``H`` sampled as ``base**n`` for ``n`` in ``exponents``."""
    H = tuple(float(base) ** int(n) for n in exponents)
    return RealModel("pos", float(p), H, tuple(float(x) for x in sample_X), tolerance=tolerance)


def bounded_homog(r0: float, p: int, n: int, sample_X: Sequence[float] = (),
                  tolerance: float = DEFAULT_TOLERANCE) -> RealModel:
    """The powers ``r0**k`` for ``|k| <= n``."""
    H = tuple(float(r0) ** k for k in range(-n, n + 1))
    return RealModel("bounded", float(p), H, tuple(float(x) for x in sample_X), r0=float(r0),
                     tolerance=tolerance)


def exp_homog(p: float, shifts: Sequence[float], sample_X: Sequence[float] = (),
              tolerance: float = DEFAULT_TOLERANCE) -> RealModel:
    return RealModel("exp", float(p), tuple(float(s) for s in shifts),
                     tuple(float(x) for x in sample_X), tolerance=tolerance)


def _as_callable(m: RealModel, f) -> Callable[[np.ndarray], np.ndarray]:
    if callable(f):
        return f
    if isinstance(f, Mapping):
        pts = np.array(sorted(f), dtype=float)
        vals = np.array([f[k] for k in sorted(f)], dtype=float)
    else:
        pts, vals = (np.asarray(a, dtype=float) for a in f)
        order = np.argsort(pts)
        pts, vals = pts[order], vals[order]

    def lookup(x):
        x = np.asarray(x, dtype=float)
        i = np.clip(np.searchsorted(pts, x), 0, len(pts) - 1)
        j = np.clip(i - 1, 0, len(pts) - 1)
        best = np.where(np.abs(pts[i] - x) <= np.abs(pts[j] - x), i, j)
        hit = np.isclose(pts[best], x, rtol=m.tolerance, atol=m.tolerance)
        if not hit.all():
            miss = float(np.asarray(x)[~hit].flat[0])
            raise DomainEscape(f"h.x = {miss!r} is not a sampled point of f")
        return vals[best]

    return lookup


def numeric_regularize(m: RealModel, f, side: str = "min") -> np.ndarray:
    """Truncated regularized minorant (``side="min"``) or majorant on ``m.sample_X``.

    ``f`` is a vectorized callable or a sample table (mapping point -> value,
    or a ``(points, values)`` pair). Raises DomainEscape when some ``h.x``
    leaves the domain or the table, or when ``f`` is not finite there.
    """
    if side not in ("min", "max"):
        raise OrdhullError(f"side must be 'min' or 'max', got {side!r}")
    H = np.asarray(m.sample_H, dtype=float)
    X = np.asarray(m.sample_X, dtype=float)
    moved = m.act(H[:, None], X[None, :])              # (|H|, |X|)
    if not m.in_domain(moved).all():
        bad = moved[~m.in_domain(moved)].flat[0]
        raise DomainEscape(f"h.x = {bad!r} leaves the domain")
    g = _as_callable(m, f)
    vals = np.asarray(g(moved), dtype=float)
    if not np.isfinite(vals).all():
        raise DomainEscape("f is not finite on the moved sample")
    terms = vals / m.multiplier(H)[:, None]
    return terms.min(axis=0) if side == "min" else terms.max(axis=0)


class DemoRow(NamedTuple):
    x: float
    f: float
    f_min: float
    f_max: float


def regularization_table(m: RealModel, f) -> list[DemoRow]:
    """``(x, f(x), f_min(x), f_max(x))`` rows over ``m.sample_X``."""
    X = np.asarray(m.sample_X, dtype=float)
    fx = np.asarray(_as_callable(m, f)(X), dtype=float)
    lo = numeric_regularize(m, f, "min")
    hi = numeric_regularize(m, f, "max")
    return [DemoRow(float(a), float(b), float(c), float(d)) for a, b, c, d in zip(X, fx, lo, hi)]


# -- orbits of the positive reals on the extended line -------------------------

ORBITS = ("{-inf}", "]-inf,0[", "{0}", "]0,+inf[", "{+inf}")


class RealOrbit(NamedTuple):
    label: str
    stationary: bool


def classify_real_orbit(x: float) -> RealOrbit:
    """Orbit of ``x`` in the extended reals under multiplication by ``]0, inf[``."""
    x = float(x)
    if math.isnan(x):
        raise OrdhullError("NaN is not an extended real")
    if x == -math.inf:
        label = ORBITS[0]
    elif x < 0:
        label = ORBITS[1]
    elif x == 0:
        label = ORBITS[2]
    elif x < math.inf:
        label = ORBITS[3]
    else:
        label = ORBITS[4]
    return RealOrbit(label, label.startswith("{"))


# -- expressions in demo configurations -----------------------------------------

_FUNCS = {
    "sin": np.sin, "cos": np.cos, "tan": np.tan, "exp": np.exp, "log": np.log,
    "log2": np.log2, "log10": np.log10, "sqrt": np.sqrt, "abs": np.abs,
    "minimum": np.minimum, "maximum": np.maximum,
}
_CONSTS = {"pi": math.pi, "e": math.e}
_NODES = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load, ast.Constant,
          ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Mod)


def parse_expression(text: str) -> Callable[[np.ndarray], np.ndarray]:
    """Compile an arithmetic expression in ``x`` (numpy ufuncs, ``pi``, ``e``)."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise OrdhullError(f"cannot parse expression {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _NODES):
            raise OrdhullError(f"unsupported syntax in {text!r}: {type(node).__name__}")
        if isinstance(node, ast.Name) and node.id not in _FUNCS and node.id not in _CONSTS and node.id != "x":
            raise OrdhullError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and node.func.id in _FUNCS):
            raise OrdhullError(f"only {sorted(_FUNCS)} may be called in {text!r}")
    code = compile(tree, "<demo-expression>", "eval")

    def fn(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            out = eval(code, {"__builtins__": {}}, {**_FUNCS, **_CONSTS, "x": x})
        return np.broadcast_to(np.asarray(out, dtype=float), x.shape)

    return fn


def _grid(grid) -> tuple[float, ...]:
    if isinstance(grid, Mapping):
        if "logspace" in grid:
            a, b, n = grid["logspace"]
            return tuple(np.geomspace(float(a), float(b), int(n)).tolist())
        if "linspace" in grid:
            a, b, n = grid["linspace"]
            return tuple(np.linspace(float(a), float(b), int(n)).tolist())
        raise OrdhullError(f"unknown grid specification {dict(grid)}")
    return tuple(float(v) for v in grid)


def model_from_config(cfg: Mapping) -> tuple[RealModel, Callable, str]:
    """Build ``(model, f, expression)`` from a demo configuration block.

    Keys: ``kind``, ``p``, ``function`` (expression in ``x``), ``sample_X``
    (list or ``{"logspace"|"linspace": [a, b, n]}``), and for the group
    sample either ``sample_H`` (list), or ``exponents: [lo, hi]`` with
    ``base`` (pos) / ``r0`` (bounded), or ``shifts`` (exp). Optional
    ``tolerance``.
    """
    try:
        kind = str(cfg["kind"])
        p = float(cfg["p"])
        expr = str(cfg["function"])
        X = _grid(cfg["sample_X"])
    except KeyError as exc:
        raise OrdhullError(f"demo block is missing {exc.args[0]!r}") from None
    tol = float(cfg.get("tolerance", DEFAULT_TOLERANCE))
    if "sample_H" in cfg:
        H = _grid(cfg["sample_H"])
    elif kind == "exp":
        H = _grid(cfg.get("shifts", [0.0]))
    else:
        lo, hi = cfg.get("exponents", [0, 0])
        base = float(cfg.get("r0" if kind == "bounded" else "base", 2.0))
        H = tuple(base ** k for k in range(int(lo), int(hi) + 1))
    r0 = float(cfg["r0"]) if "r0" in cfg else None
    model = RealModel(kind, p, H, X, r0=r0, tolerance=tol)
    return model, parse_expression(expr), expr
