"""Command line interface: ``ordhull <command> ...``.

Every command produces a list of records (plain dicts). ``--format json``
prints them one per line; the default text format is rendered from the
same records. Exit codes: 0 success / everything holds, 1 a statement
failed or the hunt found something, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .actions import orbit, stabilizer, stationary_elements
from .continuum import model_from_config, regularization_table
from .envelope import (classify, lower_envelope, regularized_majorant, regularized_minorant,
                       upper_envelope)
from .errors import OrdhullError
from .instancefile import fixture_path, load_instance, load_json
from .statements import STATEMENTS, check_statements
from .verifier import InstanceFamily, hunt, write_findings

DEMO_PRESETS = ("pos_square", "pos_identity", "bounded_wave", "pos_wave", "exp_shift")


def _default_seed() -> int:
    raw = os.environ.get("ORDHULL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"ORDHULL_SEED must be an integer, got {raw!r}")


def _csv(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _error_record(exc: Exception) -> dict:
    w = getattr(exc, "witness", None)
    return {"record": "error", "error": type(exc).__name__, "message": str(exc),
            "witness": list(w) if isinstance(w, tuple) else w}


def _command_record(args, extra: dict | None = None) -> dict:
    rec = {"record": "command", "command": args.command}
    if getattr(args, "path", None):
        rec["path"] = str(args.path)
    if extra:
        rec.update(extra)
    return rec


def _pick_function(inst, name: str):
    if name not in inst.functions:
        known = ", ".join(sorted(inst.functions)) or "none"
        raise OrdhullError(f"no function named {name!r} (available: {known})")
    return inst.functions[name]


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> tuple[int, list[dict]]:
    inst = load_instance(args.path)
    return 0, [
        _command_record(args, {"digest": inst.digest}),
        {"record": "validation", "valid": True, "name": inst.name,
         "sizes": {"H": len(inst.H), "T": len(inst.T), "X": len(inst.X), "S": len(inst.C.base),
                   "completed": len(inst.C)},
         "added": [s for s, ok in (("BOT", inst.C.bottom_added), ("TOP", inst.C.top_added)) if ok],
         "flags": dict(inst.flags), "functions": sorted(inst.functions)},
    ]


def cmd_envelope(args) -> tuple[int, list[dict]]:
    inst = load_instance(args.path)
    f = _pick_function(inst, args.function)
    algorithm = "bruteforce" if args.algorithm == "oracle" else "orbitwise"
    env = (lower_envelope if args.side == "lower" else upper_envelope)(inst, f, args.cls, algorithm)
    return 0, [
        _command_record(args, {"digest": inst.digest}),
        {"record": "envelope", "function": args.function, "class": args.cls.upper(),
         "side": args.side, "algorithm": args.algorithm, "input": f.as_dict(), "table": env.as_dict()},
    ]


def cmd_regularize(args) -> tuple[int, list[dict]]:
    inst = load_instance(args.path)
    names = sorted(inst.functions) if args.function == "all" else [args.function]
    out = [_command_record(args, {"digest": inst.digest})]
    for name in names:
        f = _pick_function(inst, name)
        out.append({"record": "regularization", "function": name, "input": f.as_dict(),
                    "minorant": regularized_minorant(inst, f).as_dict(),
                    "majorant": regularized_majorant(inst, f).as_dict()})
    return 0, out


def cmd_orbits(args) -> tuple[int, list[dict]]:
    inst = load_instance(args.path)
    out = [_command_record(args, {"digest": inst.digest})]
    for space, action in (("X", inst.action_X), ("S", inst.action_S)):
        fixed = stationary_elements(action)
        for pt in action.points:
            out.append({"record": "orbit", "space": space, "point": pt,
                        "orbit": sorted(orbit(action, pt)),
                        "stabilizer": sorted(stabilizer(action, pt)),
                        "stationary": pt in fixed})
    return 0, out


def cmd_classify(args) -> tuple[int, list[dict]]:
    inst = load_instance(args.path)
    names = sorted(inst.functions) if args.function == "all" else [args.function]
    out = [_command_record(args, {"digest": inst.digest})]
    for name in names:
        f = _pick_function(inst, name)
        cls = classify(inst, f)
        out.append({"record": "classification", "function": name, "input": f.as_dict(),
                    "classes": [c for c in ("HG", "HGC", "SUB", "SUPER") if c in cls]})
    return 0, out


def cmd_check(args) -> tuple[int, list[dict]]:
    stmts = list(STATEMENTS) if args.statements == "all" else _csv(args.statements)
    inst = load_instance(args.path)
    if args.functions == "tables" or (args.functions == "all" and not inst.functions):
        batch, label = None, "tables"
    else:
        names = sorted(inst.functions) if args.functions == "all" else _csv(args.functions)
        batch = np.stack([_pick_function(inst, n).array for n in names])
        label = names
    reports = check_statements(inst, stmts, f=batch, engine=args.engine, seed=args.seed,
                               sample=args.sample)
    out = [_command_record(args, {"digest": inst.digest, "functions": label, "engine": args.engine})]
    out += [dict(r.to_record(), record="statement") for r in reports]
    failed = [r.stmt for r in reports if r.verdict == "fails"]
    out.append({"record": "summary", "statements": len(reports), "failed": failed,
                "skipped": [r.stmt for r in reports if r.verdict == "skipped"]})
    return (1 if failed else 0), out


def cmd_hunt(args) -> tuple[int, list[dict]]:
    targets = _csv(args.targets)
    mode = "random" if args.random else "exhaustive"
    fam = InstanceFamily(args.max_h, args.max_x, args.max_s, mode=mode, seed=args.seed,
                         count=args.budget, h_kind="semigroup" if args.semigroup_only else "group",
                         t_group=not args.any_t,
                         free=False if args.non_free else (True if args.free else None))
    summary = hunt(fam, targets, args.budget, seed=args.seed, f_sample=args.sample)
    out = [_command_record(args, {"bounds": [args.max_h, args.max_x, args.max_s], "mode": mode,
                                  "targets": list(summary.targets), "budget": args.budget,
                                  "seed": args.seed})]
    files = []
    if summary.results and args.out:
        files = [p.name for p in write_findings(summary.results, args.out)]
    for i, res in enumerate(summary.results):
        rec = dict(res.to_record(), record="finding")
        if files:
            rec["file"] = files[i]
        out.append(rec)
    out.append({"record": "hunt", "examined": summary.examined, "findings": len(summary.results),
                "unconfirmed": summary.unconfirmed, "out": str(args.out) if files else None})
    return (1 if summary.results else 0), out


def cmd_demo(args) -> tuple[int, list[dict]]:
    if args.path:
        cfg = load_json(args.path)
        cfg = cfg.get("demo", cfg) if isinstance(cfg, dict) else cfg
    elif args.preset:
        cfg = load_json(fixture_path(f"demo_{args.preset}"))["demo"]
    else:
        if not (args.kind and args.function):
            raise OrdhullError("demo needs a file, --preset, or --kind with --function")
        cfg = {"kind": args.kind, "p": args.p, "function": args.function,
               "sample_X": {"logspace": [args.x_min, args.x_max, args.x_count]}}
        if args.kind == "exp":
            lo, hi = args.exponents
            cfg["shifts"] = [k * args.step for k in range(lo, hi + 1)]
        else:
            cfg["exponents"] = list(args.exponents)
            cfg["base" if args.kind == "pos" else "r0"] = args.base
    if not isinstance(cfg, dict):
        raise OrdhullError("demo configuration must be an object")
    model, f, expr = model_from_config(cfg)
    rows = regularization_table(model, f)
    out = [_command_record(args, {"kind": model.kind, "p": model.p, "function": expr,
                                  "n_H": len(model.sample_H), "n_X": len(model.sample_X),
                                  "tolerance": model.tolerance})]
    out += [{"record": "demo_row", "x": r.x, "f": r.f, "f_min": r.f_min, "f_max": r.f_max} for r in rows]
    return 0, out


# -- rendering ----------------------------------------------------------------

def _fmt_table(d: dict) -> str:
    return ", ".join(f"{k}->{v}" for k, v in d.items())


def render_text(rec: dict) -> str:
    kind = rec.get("record")
    if kind == "command":
        rest = {k: v for k, v in rec.items() if k not in ("record", "command")}
        return f"# {rec['command']} " + " ".join(f"{k}={v}" for k, v in rest.items())
    if kind == "error":
        w = f" witness={rec['witness']}" if rec.get("witness") is not None else ""
        return f"error: {rec['error']}: {rec['message']}{w}"
    if kind == "validation":
        flags = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in rec["flags"].items())
        return (f"valid {rec['name'] or ''}: |H|={rec['sizes']['H']} |T|={rec['sizes']['T']} "
                f"|X|={rec['sizes']['X']} |S|={rec['sizes']['S']} added={rec['added'] or '-'}\n"
                f"  {flags}\n  functions: {', '.join(rec['functions']) or '-'}")
    if kind == "envelope":
        return (f"{rec['side']} {rec['class']} envelope of {rec['function']} ({rec['algorithm']}):\n"
                f"  f   : {_fmt_table(rec['input'])}\n  env : {_fmt_table(rec['table'])}")
    if kind == "regularization":
        return (f"{rec['function']}:\n  f     : {_fmt_table(rec['input'])}\n"
                f"  f_min : {_fmt_table(rec['minorant'])}\n  f_max : {_fmt_table(rec['majorant'])}")
    if kind == "orbit":
        st = " stationary" if rec["stationary"] else ""
        return (f"{rec['space']} {rec['point']}: orbit {{{', '.join(rec['orbit'])}}} "
                f"stabilizer {{{', '.join(rec['stabilizer'])}}}{st}")
    if kind == "classification":
        return f"{rec['function']}: {{{', '.join(rec['classes'])}}}  ({_fmt_table(rec['input'])})"
    if kind == "statement":
        line = f"{rec['stmt']:<11} {rec['verdict']:<7} checked={rec['checked']}"
        if not rec["hypotheses_met"]:
            unmet = sorted({r for p in rec["parts"].values() if not p["met"] for r in p["requires"]
                            if not rec["hypotheses"][r]})
            line += f" unmet={','.join(unmet)}"
        if rec["violations"]:
            line += f" violations={','.join(rec['violations'])}"
        if rec["findings"]:
            line += f" findings={','.join(rec['findings'])}"
        if rec["note"]:
            line += f" ({rec['note']})"
        if rec["witness"]:
            line += f"\n    witness: {json.dumps(rec['witness'], ensure_ascii=False, default=_jsonable)}"
        return line
    if kind == "summary":
        return (f"{rec['statements']} statements, {len(rec['failed'])} failed"
                + (f": {', '.join(rec['failed'])}" if rec["failed"] else ""))
    if kind == "finding":
        tag = "violation" if rec["violation"] else "finding"
        where = f" -> {rec['file']}" if rec.get("file") else ""
        return (f"{tag}: {rec['stmt']}/{rec['part']} on instance #{rec['index']} "
                f"({rec['digest']}){where}\n    witness: {json.dumps(rec['witness'], ensure_ascii=False, default=_jsonable)}")
    if kind == "hunt":
        return (f"examined {rec['examined']} instances, {rec['findings']} confirmed findings"
                + (f" written to {rec['out']}" if rec["out"] else "")
                + (f", {rec['unconfirmed']} unconfirmed dropped" if rec["unconfirmed"] else ""))
    if kind == "demo_row":
        return f"{rec['x']:>24.17g} {rec['f']:>24.17g} {rec['f_min']:>24.17g} {rec['f_max']:>24.17g}"
    if kind == "timing":
        return f"# elapsed {rec['seconds']:.3f}s"
    return json.dumps(rec, ensure_ascii=False)


def _jsonable(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def emit(records: list[dict], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    demo_header = False
    for rec in records:
        if fmt == "json":
            stream.write(json.dumps(rec, ensure_ascii=False, default=_jsonable) + "\n")
            continue
        if rec.get("record") == "demo_row" and not demo_header:
            stream.write(f"{'x':>24} {'f':>24} {'f_min':>24} {'f_max':>24}\n")
            demo_header = True
        stream.write(render_text(rec) + "\n")


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="text (default) or one JSON record per line")
    common.add_argument("--seed", type=int, default=None, help="default: $ORDHULL_SEED or 0")
    common.add_argument("--timing", action="store_true", help="append a wall-clock record")

    p = argparse.ArgumentParser(prog="ordhull", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ordhull {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="load and validate an instance file")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("envelope", parents=[common], help="lower/upper envelope of a named function")
    s.add_argument("path")
    s.add_argument("--function", required=True)
    s.add_argument("--class", dest="cls", required=True, choices=("hg", "hgc", "sub", "super"))
    s.add_argument("--side", choices=("lower", "upper"), default="lower")
    s.add_argument("--algorithm", choices=("oracle", "orbitwise"), default="oracle")
    s.set_defaults(func=cmd_envelope)

    s = sub.add_parser("regularize", parents=[common], help="regularized minorant and majorant")
    s.add_argument("path")
    s.add_argument("--function", default="all")
    s.set_defaults(func=cmd_regularize)

    s = sub.add_parser("orbits", parents=[common], help="orbits, stabilizers, stationary points")
    s.add_argument("path")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("classify", parents=[common], help="HG/HGC/SUB/SUPER membership")
    s.add_argument("path")
    s.add_argument("--function", default="all")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[common], help="run statement checks")
    s.add_argument("path")
    s.add_argument("--statements", default="all", help="comma list of ids or 'all'")
    s.add_argument("--functions", default="all",
                   help="comma list of names, 'all' (named functions) or 'tables' (every table)")
    s.add_argument("--engine", choices=("fast", "reference"), default="fast")
    s.add_argument("--sample", type=int, default=None,
                   help="with --functions tables: draw this many tables instead of all")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("hunt", parents=[common], help="search for counterexamples")
    s.add_argument("--max-h", type=int, default=2)
    s.add_argument("--max-x", type=int, default=3)
    s.add_argument("--max-s", type=int, default=4)
    s.add_argument("--semigroup-only", action="store_true", help="H ranges over non-group semigroups")
    s.add_argument("--any-t", action="store_true", help="allow T = h(H) that is not a group")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--non-free", action="store_true", help="only actions with a nontrivial stabilizer")
    g.add_argument("--free", action="store_true", help="only free actions")
    s.add_argument("--targets", required=True, help="comma list of statement ids")
    s.add_argument("--budget", type=int, default=1000, help="number of instances to examine")
    s.add_argument("--random", action="store_true", help="seeded random stream instead of exhaustive")
    s.add_argument("--sample", type=int, default=None, help="tables per instance (default: all when small)")
    s.add_argument("--out", type=Path, default=None, help="directory for finding files")
    s.set_defaults(func=cmd_hunt)

    s = sub.add_parser("demo", parents=[common], help="numeric regularization on the real line")
    s.add_argument("path", nargs="?")
    s.add_argument("--preset", choices=DEMO_PRESETS)
    s.add_argument("--kind", choices=("pos", "bounded", "exp"))
    s.add_argument("--p", type=float, default=1.0)
    s.add_argument("--function", help="expression in x, e.g. 'x**2'")
    s.add_argument("--exponents", type=int, nargs=2, default=(-10, 10), metavar=("LO", "HI"))
    s.add_argument("--base", type=float, default=2.0, help="base (pos) or r0 (bounded)")
    s.add_argument("--step", type=float, default=1.0, help="shift step (exp)")
    s.add_argument("--x-min", type=float, default=0.1)
    s.add_argument("--x-max", type=float, default=10.0)
    s.add_argument("--x-count", type=int, default=100)
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    t0 = time.perf_counter()
    try:
        code, records = args.func(args)
    except OrdhullError as exc:
        code, records = 2, [_command_record(args), _error_record(exc)]
    if args.timing:
        records.append({"record": "timing", "seconds": time.perf_counter() - t0})
    emit(records, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
