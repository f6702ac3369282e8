"""JSON instance files.

Layout (all identifiers are strings)::

    {
      "name": "...",                                   optional
      "semigroup_H": {"elements": [...], "table": [[...], ...]},
      "semigroup_T": {"elements": [...], "table": [[...], ...]},
      "hom":         {h: t, ...},
      "carrier":     [x, ...],
      "action_X":    {h: {x: y, ...}, ...},
      "poset_S":     {"elements": [...], "covers": [[a, b], ...]},
      "action_S":    {t: {s: s2, ...}, ...},
      "functions":   {name: {x: value, ...}, ...},   values may be "BOT"/"TOP"
      "demo":        {...}                             optional, see continuum
    }

Tables are row-major: ``table[i][j]`` is ``elements[i] * elements[j]``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .actions import CarrierAction, OrderedAction
from .algebra import FiniteSemigroup, Homomorphism
from .errors import InstanceFileError, OrdhullError
from .instance import Instance
from .order import closure, complete

SECTIONS = ("semigroup_H", "semigroup_T", "hom", "carrier", "action_X", "poset_S", "action_S")


def _need(d: dict, key: str, kind: type, where: str) -> Any:
    if key not in d:
        raise InstanceFileError(f"{where}: missing {key!r}")
    v = d[key]
    if not isinstance(v, kind):
        raise InstanceFileError(f"{where}.{key}: expected {kind.__name__}, got {type(v).__name__}")
    return v


def _semigroup(d: dict, key: str) -> FiniteSemigroup:
    sec = _need(d, key, dict, "instance")
    elements = [str(e) for e in _need(sec, "elements", list, key)]
    rows = _need(sec, "table", list, key)
    if len(rows) != len(elements) or any(not isinstance(r, list) or len(r) != len(elements) for r in rows):
        raise InstanceFileError(f"{key}.table must be {len(elements)}x{len(elements)}")
    index = {e: i for i, e in enumerate(elements)}
    try:
        table = [[index[str(v)] for v in row] for row in rows]
    except KeyError as e:
        raise InstanceFileError(f"{key}.table references undeclared element {e.args[0]!r}") from None
    return FiniteSemigroup(elements, table)


def _map_section(sec: dict, outer, inner, where: str, index_of) -> list[list[int]]:
    rows = []
    for a in outer:
        if a not in sec:
            raise InstanceFileError(f"{where}: no entry for {a!r}")
        m = sec[a]
        if not isinstance(m, dict):
            raise InstanceFileError(f"{where}.{a}: expected an object")
        row = []
        for b in inner:
            if b not in m:
                raise InstanceFileError(f"{where}.{a}: no image for {b!r}")
            row.append(index_of(str(m[b]), f"{where}.{a}.{b}"))
        rows.append(row)
    return rows


def parse_instance(d: dict, name: str = "") -> Instance:
    """Build and validate an :class:`Instance` from a decoded instance file."""
    if not isinstance(d, dict):
        raise InstanceFileError("instance file must contain a JSON object")
    H = _semigroup(d, "semigroup_H")
    T = _semigroup(d, "semigroup_T")

    hom_sec = _need(d, "hom", dict, "instance")
    for h in H.elements:
        if h not in hom_sec:
            raise InstanceFileError(f"hom: no entry for {h!r}")
    try:
        hom = Homomorphism(H, T, [T.index(str(hom_sec[h])) for h in H.elements])
    except OrdhullError as e:
        if type(e) is OrdhullError:
            raise InstanceFileError(f"hom: {e}") from None
        raise

    carrier = [str(x) for x in _need(d, "carrier", list, "instance")]
    xi = {x: i for i, x in enumerate(carrier)}

    def x_index(v: str, where: str) -> int:
        if v not in xi:
            raise InstanceFileError(f"{where}: {v!r} is not a carrier element")
        return xi[v]

    ax_rows = _map_section(_need(d, "action_X", dict, "instance"), H.elements, carrier, "action_X", x_index)
    action_X = CarrierAction(H, carrier, ax_rows)

    ps = _need(d, "poset_S", dict, "instance")
    elements = [str(e) for e in _need(ps, "elements", list, "poset_S")]
    covers = _need(ps, "covers", list, "poset_S")
    pairs = []
    for c in covers:
        if not isinstance(c, list) or len(c) != 2:
            raise InstanceFileError(f"poset_S.covers: expected [a, b] pairs, got {c!r}")
        pairs.append((str(c[0]), str(c[1])))
    C = complete(closure(pairs, elements))
    si = {s: i for i, s in enumerate(elements)}

    def s_index(v: str, where: str) -> int:
        if v in si:
            return si[v]
        raise InstanceFileError(f"{where}: {v!r} is not an element of poset_S")

    as_sec = _need(d, "action_S", dict, "instance")
    as_rows = _map_section(as_sec, T.elements, elements, "action_S", s_index)
    action_S = OrderedAction.from_base(T, C, as_rows)

    inst = Instance(hom, action_X, action_S, name=str(d.get("name", name)), demo=d.get("demo"))
    funcs = d.get("functions", {})
    if not isinstance(funcs, dict):
        raise InstanceFileError("functions: expected an object")
    tables = {}
    for fname, values in funcs.items():
        if not isinstance(values, dict):
            raise InstanceFileError(f"functions.{fname}: expected an object")
        try:
            tables[str(fname)] = inst.function({str(k): str(v) for k, v in values.items()})
        except OrdhullError as e:
            raise InstanceFileError(f"functions.{fname}: {e}") from None
    inst.functions = tables
    return inst


def load_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InstanceFileError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise InstanceFileError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def load_instance(path: str | Path) -> Instance:
    return parse_instance(load_json(path), name=Path(path).stem)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(inst.to_dict(), indent=2, ensure_ascii=False) + "\n"


def save_instance(inst: Instance, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps_instance(inst), encoding="utf-8")
    return path


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture, e.g. ``fixture_path("diamond_swap")``."""
    return Path(__file__).with_name("data") / f"{name}.json"


def load_fixture(name: str) -> Instance:
    return load_instance(fixture_path(name))
