"""Command-line front end: ``check``, ``suite``, ``endo-ring``, ``list-builtins``.

Exit codes: 0 HOLDS (or consistent report), 1 FAILS (or violation), 2 input,
usage or capacity error, 3 UNDECIDED.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from ._core import CapacityError, ConstructionError, Status, Verdict, using_caps
from .corpus import Corpus, builtins
from .endobridge import (correspondence_report, endomorphism_ring, faith_utumi_radical_check,
                         quasi_injective_equivalence_report)
from .finring import RING_PROPERTIES, decide_ring_property
from .modprops import MODULE_PROPERTIES, check_direct_sum_theorem, decide_module_property
from .serialize import (SchemaError, dumps, module_from_json, ring_from_json, ring_to_json,
                        to_jsonable, zmodule_from_json)
from .suite import REGISTRY_IDS, run_suite
from .zmodsnf import DEFAULT_BOUND, ArithmeticOverflow, zrickart_check

EXIT = {Status.HOLDS: 0, Status.FAILS: 1, Status.UNDECIDED: 3, Status.UNSUPPORTED: 2}
ZMODULE_PROPERTIES = ("rickart",)
REPORTS = {"ring": ("chart",), "module": ("correspondence", "qi-equivalence", "faith-utumi", "direct-sum"),
           "zmodule": ()}


class InputError(Exception):
    """Bad input: exit code 2 with this message."""


def _load(kind: str, source: str):
    """Parse a builtin reference or a JSON file; returns (object, input digest, document)."""
    corpus = builtins()
    if source.startswith("builtin:"):
        name = source.removeprefix("builtin:")
        specs = {"ring": corpus.ring_specs, "module": corpus.module_specs, "zmodule": corpus.zmodule_specs}[kind]
        if name not in specs:
            raise InputError(f"unknown builtin {kind} {name!r} (see list-builtins)")
        doc = specs[name]
        return corpus.get(kind, name), hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()
    path = Path(source)
    if not path.is_file():
        raise InputError(f"file not found: {source}")
    raw = path.read_bytes()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from exc
    parse = {"ring": ring_from_json, "module": module_from_json, "zmodule": zmodule_from_json}[kind]
    try:
        obj = parse(doc, corpus.resolve)
    except KeyError as exc:
        raise InputError(f"{source}: missing or unknown field {exc}") from exc
    except (SchemaError, ConstructionError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{source}: {exc}") from exc
    return obj, hashlib.sha256(raw).hexdigest()


def _render_value(v, indent: str = "    ") -> list[str]:
    if isinstance(v, dict) and "render" in v:
        return [f"{indent}{v['render']}"]
    if isinstance(v, dict) and set(v) == {"members"}:
        return [f"{indent}{{{', '.join(map(_fmt, v['members']))}}}"]
    if isinstance(v, dict):
        out = []
        for k, x in v.items():
            sub = _render_value(x, indent + "  ")
            if len(sub) == 1:
                out.append(f"{indent}{k}: {sub[0].strip()}")
            else:
                out.append(f"{indent}{k}:")
                out.extend(sub)
        return out
    if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
        return [line for x in v for line in _render_value(x, indent)]
    return [f"{indent}{_fmt(v)}"]


def _fmt(x) -> str:
    if isinstance(x, list):
        return "(" + ", ".join(map(str, x)) + ")"
    return str(x)


def _verdict_text(prop: str, payload: dict) -> str:
    lines = [f"{prop}: {payload['status']}"]
    if payload.get("reason"):
        lines.append(f"  reason: {payload['reason']}")
    if payload.get("witness") is not None:
        lines.append("  witness:")
        lines.extend(_render_value(payload["witness"]))
    for i, w in enumerate(payload.get("witnesses") or []):
        lines.append(f"  witness {i + 1}:")
        lines.extend(_render_value(w))
    if payload.get("certificate") is not None:
        lines.append("  certificate:")
        lines.extend(_render_value(payload["certificate"]))
    return "\n".join(lines)


def _emit(report: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(dumps(report))
    else:
        print(text)


def _check(args) -> int:
    kind = args.kind
    if args.property is None and args.report is None:
        raise InputError("give --property or --report")
    props = {"ring": RING_PROPERTIES, "module": MODULE_PROPERTIES, "zmodule": ZMODULE_PROPERTIES}[kind]
    if args.property is not None and args.property not in props:
        raise InputError(f"unknown {kind} property {args.property!r}; expected one of {', '.join(props)}")
    if args.report is not None and args.report not in REPORTS[kind]:
        raise InputError(f"unknown {kind} report {args.report!r}; expected one of "
                         f"{', '.join(REPORTS[kind]) or '(none)'}")
    obj, digest = _load(kind, args.source)
    digests = [digest]
    start = time.perf_counter()
    module = obj if kind == "module" else None
    if args.property is not None:
        if kind == "ring":
            v = decide_ring_property(obj, args.property, args.all_witnesses)
        elif kind == "module":
            v = decide_module_property(obj, args.property, args.all_witnesses)
        else:
            v = zrickart_check(obj, bound=args.bound)
        result = to_jsonable(v, module)
        code = EXIT[v.status]
        text = _verdict_text(args.property, result)
    else:
        result, code = _run_report(args, obj, digests)
        text = f"{args.report}: {result['status']}\n" + "\n".join(_render_value(
            {k: x for k, x in result.items() if k != "status"}, "  "))
    report = {
        "engine": "rickartlab", "version": __version__,
        "request": {"command": "check", "kind": kind, "source": args.source, "property": args.property,
                    "report": args.report, "bound": args.bound, "all_witnesses": args.all_witnesses},
        "input_digests": digests, "result": result,
        "timings": {"seconds": round(time.perf_counter() - start, 6)},
    }
    if code == 2:
        print(f"error: {result.get('reason') or 'capacity exceeded'}", file=sys.stderr)
    _emit(report, args.json, text)
    return code


def _run_report(args, obj, digests) -> tuple[dict, int]:
    kind, name = args.kind, args.report
    if kind == "ring":
        vals = {p: decide_ring_property(obj, p).status.value for p in RING_PROPERTIES}
        chart = [("vn_regular", "right_semihereditary"), ("right_semihereditary", "right_rickart"),
                 ("right_rickart", "right_nonsingular"), ("baer", "right_rickart")]
        broken = [f"{a} => {b}" for a, b in chart if vals[a] == "HOLDS" and vals[b] == "FAILS"]
        status = "THEOREM_VIOLATION" if broken else "CONSISTENT"
        return {"status": status, "values": vals, "broken": broken}, int(bool(broken))
    if name == "correspondence":
        rep = correspondence_report(obj)
        out = {"status": rep.status, "values": to_jsonable(rep), "flags": rep.flags}
    elif name == "qi-equivalence":
        rep = quasi_injective_equivalence_report(obj)
        out = {"status": rep.status, "conditions": rep.conditions}
    elif name == "faith-utumi":
        rep = faith_utumi_radical_check(obj)
        out = {"status": rep.status, **{k: v for k, v in to_jsonable(rep).items() if k != "status"}}
    else:
        if args.other is None:
            raise InputError("--report direct-sum needs --with <second module>")
        other, d2 = _load("module", args.other)
        digests.append(d2)
        if other.ring != obj.ring:
            raise InputError("direct-sum: the two modules are over different rings")
        rep = check_direct_sum_theorem(obj, other)
        from .finmod import direct_sum
        out = {"status": rep.status, **to_jsonable(rep, direct_sum(obj, other))}
        out.pop("notes", None)
    return out, 1 if out["status"] == "THEOREM_VIOLATION" else 0


def _suite(args) -> int:
    ids = [i for chunk in args.filter or [] for i in chunk.split(",") if i]
    unknown = [i for i in ids if i not in REGISTRY_IDS]
    if unknown:
        raise InputError(f"unknown theorem id(s): {', '.join(unknown)}; known: {', '.join(REGISTRY_IDS)}")
    corpus, digests = None, []
    for src in args.corpus or ["builtin"]:
        if src == "builtin":
            part = builtins()
            digests.append(hashlib.sha256(json.dumps(
                [part.ring_specs, part.module_specs, part.zmodule_specs, part.pairs],
                sort_keys=True).encode()).hexdigest())
        else:
            path = Path(src)
            if not path.is_file():
                raise InputError(f"file not found: {src}")
            raw = path.read_bytes()
            try:
                part = Corpus.from_json(json.loads(raw), name=path.name)
            except (json.JSONDecodeError, SchemaError) as exc:
                raise InputError(f"{src}: {exc}") from exc
            digests.append(hashlib.sha256(raw).hexdigest())
        corpus = part if corpus is None else corpus.merge(part)
    if corpus.is_empty:
        raise InputError("empty corpus: nothing to verify")
    try:
        rep = run_suite(corpus, ids or None, bound=args.bound if args.bound is not None else 3,
                        all_witnesses=args.all_witnesses)
    except (KeyError, SchemaError, ConstructionError) as exc:
        raise InputError(f"corpus entry could not be built: {exc}") from exc
    body = rep.to_json()
    report = {"engine": "rickartlab", "version": __version__,
              "request": {"command": "suite", "corpus": args.corpus or ["builtin"], "filter": ids},
              "input_digests": digests, "result": body,
              "timings": {"seconds": round(rep.seconds, 6)}}
    lines = [f"suite over corpus {corpus.name}: {rep.violation_count} violation(s)",
             f"{'id':<20}{'instances':>10}{'checked':>9}{'violations':>12}  breakdown"]
    for t in rep.theorems:
        bd = ", ".join(f"{k} {v}" for k, v in t.breakdown.items())
        lines.append(f"{t.id:<20}{len(t.results):>10}{t.checked:>9}{len(t.violations):>12}  {bd}")
    for t in rep.theorems:
        for r in t.violations:
            lines.append(f"VIOLATION {t.id} on {r.instance}:")
            lines.extend(_render_value(to_jsonable(r.detail)))
    _emit(report, args.json, "\n".join(lines))
    return 0 if rep.ok else 1


def _endo_ring(args) -> int:
    M, digest = _load("module", args.source)
    E = endomorphism_ring(M)
    doc = ring_to_json(E.ring)
    doc["carrier"] = [[list(M.elements[y]) for y in f.images] for f in E.carrier]
    Path(args.out).write_text(dumps(doc) + "\n")
    print(f"wrote End({M.label}) of order {E.ring.order} to {args.out}")
    return 0


def _list_builtins(args) -> int:
    c = builtins()
    doc = {"version": c.name, "rings": sorted(c.ring_specs), "modules": sorted(c.module_specs),
           "zmodules": sorted(c.zmodule_specs), "pairs": [list(p) for p in c.pairs]}
    if args.json:
        print(dumps(doc))
        return 0
    for kind in ("rings", "modules", "zmodules"):
        print(f"{kind}:")
        for n in doc[kind]:
            print(f"  builtin:{n}")
    print("pairs:")
    for a, b in c.pairs:
        print(f"  {a} + {b}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--cap-module", type=int, metavar="N", help="override the module order cap")
    common.add_argument("--all-witnesses", action="store_true", help="collect every counterexample")
    common.add_argument("--bound", type=int, metavar="N", default=None,
                        help=f"entry bound for the free Z-module sweep (check default {DEFAULT_BOUND})")

    p = argparse.ArgumentParser(prog="rickartlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rickartlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="decide one property or produce one report")
    c.add_argument("kind", choices=("ring", "module", "zmodule"))
    c.add_argument("source", help="builtin:<name> or a JSON file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--property", help="property tag")
    g.add_argument("--report", help="report kind")
    c.add_argument("--with", dest="other", help="second module for --report direct-sum")

    s = sub.add_parser("suite", parents=[common], help="run the theorem registry over a corpus")
    s.add_argument("--corpus", nargs="+", metavar="SRC", help="'builtin' and/or corpus JSON files")
    s.add_argument("--filter", action="append", metavar="IDS", help="comma-separated theorem ids")

    e = sub.add_parser("endo-ring", parents=[common], help="export End_R(M) as a ring file")
    e.add_argument("source")
    e.add_argument("--out", required=True)

    sub.add_parser("list-builtins", parents=[common], help="list builtin corpus names")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command == "check" and args.bound is None:
        args.bound = DEFAULT_BOUND
    caps = {"module_order": args.cap_module} if args.cap_module else {}
    handler = {"check": _check, "suite": _suite, "endo-ring": _endo_ring, "list-builtins": _list_builtins}
    try:
        with using_caps(**caps):
            return handler[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticOverflow as exc:
        print(f"error: arithmetic overflow: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
