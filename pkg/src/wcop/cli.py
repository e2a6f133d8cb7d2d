"""Command line: ``wcop classify|oracle|example``.

Spec documents are JSON::

    {"kind": "finite", "field": "rational",
     "masses": ["1", "2", "1"], "phi": [0, 0, 1], "usq": ["1", "1", "4"]}

or, for a geometric tail space::

    {"kind": "geometric_tail", "field": "rational",
     "head": {"masses": ["1"], "phi": [0], "usq": ["0"]},
     "tail": {"mass": {"a": "1", "r": "1/2"}, "usq": {"a": "1", "r": "1"},
              "map": {"type": "constant", "c": 0}}}

Exit status: 0 on success, 1 on input errors, 2 when a theorem audit fails or
the oracle disagrees with the pointwise criteria.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from . import __version__, catalog
from .classify import classify
from .errors import OracleMismatch, ParseError, RefusesTailSpace, UnknownExample, ValidationError, WcopError
from .oracle import oracle_verdicts
from .scalars import DEFAULT_TOL, fmt
from .space import (
    Constant,
    FiniteSpace,
    Geometric,
    GeometricTailSpace,
    ShiftDown,
    ShiftUp,
    WeightedSystem,
    validate,
)

EXIT_OK, EXIT_INPUT, EXIT_FINDING = 0, 1, 2

_MAPS = {"constant": (Constant, "c"), "shift_down": (ShiftDown, "d"), "shift_up": (ShiftUp, "d")}


@dataclass(frozen=True)
class RunOptions:
    max_order: int = 4
    alt_shifts: int = 4
    alt_depth: int = 4
    tolerance: float = DEFAULT_TOL
    seed: Optional[int] = None
    trials: int = 100


# ---------------------------------------------------------------------------
# spec documents


def _get(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", where)
    if key not in doc:
        raise ParseError(f"missing field {key!r}", where)
    return doc[key]


def _list(doc: dict, key: str, where: str) -> list:
    v = _get(doc, key, where)
    if not isinstance(v, list):
        raise ParseError("expected a list", f"{where}.{key}".lstrip("."))
    return v


def _geometric(doc: dict, where: str) -> Geometric:
    return Geometric(_get(doc, "a", where), _get(doc, "r", where))


def parse_spec(document) -> tuple:
    """Spec document (dict or JSON text) -> (validated system, RunOptions)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    kind = _get(document, "kind", "")
    field_mode = document.get("field", "rational")
    if kind == "finite":
        system = WeightedSystem(
            FiniteSpace(tuple(_list(document, "masses", ""))),
            tuple(_list(document, "phi", "")),
            tuple(_list(document, "usq", "")),
            field=field_mode,
        )
    elif kind == "geometric_tail":
        head = _get(document, "head", "")
        tail = _get(document, "tail", "")
        mp = _get(tail, "map", "tail")
        mtype = _get(mp, "type", "tail.map")
        if mtype not in _MAPS:
            raise ParseError(f"unknown map type {mtype!r}", "tail.map.type")
        cls, arg = _MAPS[mtype]
        system = WeightedSystem(
            GeometricTailSpace(tuple(_list(head, "masses", "head")),
                               _geometric(_get(tail, "mass", "tail"), "tail.mass")),
            tuple(_list(head, "phi", "head")),
            tuple(_list(head, "usq", "head")),
            cls(_get(mp, arg, "tail.map")),
            _geometric(_get(tail, "usq", "tail"), "tail.usq"),
            field_mode,
        )
    else:
        raise ParseError(f"unknown kind {kind!r}", "kind")
    system = validate(system)

    opts = document.get("options", {})
    if not isinstance(opts, dict):
        raise ParseError("expected an object", "options")
    known = {f.name for f in fields(RunOptions)}
    unknown = set(opts) - known
    if unknown:
        raise ParseError(f"unknown option(s) {sorted(unknown)}", "options")
    try:
        options = RunOptions(**opts)
    except TypeError as exc:
        raise ParseError(str(exc), "options") from None
    return system, options


def serialize_spec(system: WeightedSystem, options: Optional[RunOptions] = None) -> dict:
    if system.finite:
        doc = {
            "kind": "finite",
            "field": system.field,
            "masses": [fmt(m) for m in system.model.masses],
            "phi": list(system.phi),
            "usq": [fmt(w) for w in system.usq],
        }
    else:
        tm = system.tail_map
        mtype = {Constant: "constant", ShiftDown: "shift_down", ShiftUp: "shift_up"}[type(tm)]
        arg = _MAPS[mtype][1]
        doc = {
            "kind": "geometric_tail",
            "field": system.field,
            "head": {
                "masses": [fmt(m) for m in system.model.head_masses],
                "phi": list(system.phi),
                "usq": [fmt(w) for w in system.usq],
            },
            "tail": {
                "mass": {"a": fmt(system.model.tail_mass.a), "r": fmt(system.model.tail_mass.r)},
                "usq": {"a": fmt(system.tail_usq.a), "r": fmt(system.tail_usq.r)},
                "map": {"type": mtype, arg: getattr(tm, arg)},
            },
        }
    if options is not None and options != RunOptions():
        doc["options"] = {k: v for k, v in asdict(options).items() if getattr(RunOptions(), k) != v}
    return doc


def digest(system: WeightedSystem) -> str:
    canon = json.dumps(serialize_spec(system), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# ---------------------------------------------------------------------------
# reports


def _header(system: WeightedSystem) -> dict:
    return {
        "tool": "wcop",
        "version": __version__,
        "input_digest": digest(system),
        "field": system.field,
        "model": "finite" if system.finite else "geometric_tail",
    }


def _window(system: WeightedSystem, options: RunOptions) -> int:
    if system.finite:
        return system.size
    return system.head_size + options.max_order + options.alt_shifts + options.alt_depth


def report_document(system: WeightedSystem, options: RunOptions, report) -> dict:
    from .calculus import j_table

    doc = _header(system)
    doc["options"] = {
        "max_order": options.max_order,
        "alt_shifts": options.alt_shifts,
        "alt_depth": options.alt_depth,
        "tolerance": options.tolerance if system.field == "float" else 0,
    }
    dense = report.densely_defined
    doc["densely_defined"] = {"verdict": "yes" if dense.verdict else "no", "witness": dense.witness}
    inv = report.domain_invariant
    doc["domain_invariant"] = {
        "verdict": inv.status,
        "c_star": None if inv.c_star is None else fmt(inv.c_star),
        "witness": inv.witness,
        "note": inv.reason,
    }
    orders = []
    for o in report.orders:
        if o.status != "decided":
            orders.append({"n": o.n, "status": "blocked", "reason": o.reason})
            continue
        orders.append({
            "n": o.n,
            "status": "decided",
            "isometry": "yes" if o.isometry else "no",
            "expansive": "yes" if o.expansive else "no",
            "margin": fmt(o.margin),
            "worst_atom": o.worst_atom,
            "witness": o.witness,
            "within_tolerance": o.within_tolerance,
            "evaluated_window": o.window,
        })
    doc["orders"] = orders
    doc["hyperexpansive_up_to"] = report.hyperexpansive_up_to
    alt = report.completely_alternating
    doc["completely_alternating"] = {
        "tested_depth": {"m_max": alt.depth[0], "n_max": alt.depth[1]},
        "verdict": alt.status,
        "certified_all_depths": alt.certified,
        "failures": [{"atom": k, "m": m, "n": n, "value": fmt(v)} for k, m, n, v in alt.failures],
        "note": alt.reason,
    }
    win = _window(system, options)
    try:
        jt = j_table(system, max(options.max_order, options.alt_shifts + options.alt_depth))
        doc["j_table"] = {
            "atoms": win,
            "rows": [[fmt(v) for v in jt.J(n).window(win)] for n in range(jt.orders + 1)],
        }
    except WcopError as exc:
        doc["j_table"] = {"error": str(exc)}
    doc["audits"] = [
        {"name": a.name, "applies": a.applies,
         "holds": None if a.holds is None else a.holds, "detail": a.detail}
        for a in report.audits
    ]
    doc["findings"] = [f"THEOREM-VIOLATION: {a.name}: {a.detail}" for a in report.findings]
    return doc


def run_classify(system: WeightedSystem, options: RunOptions) -> tuple:
    """Classify and audit; returns (report document, exit status)."""
    report = classify(system, options.max_order, (options.alt_shifts, options.alt_depth),
                      tol=options.tolerance)
    doc = report_document(system, options, report)
    return doc, EXIT_FINDING if doc["findings"] else EXIT_OK


def run_oracle(system: WeightedSystem, options: RunOptions) -> tuple:
    """Oracle verdicts and their agreement with the criteria; (document, status)."""
    if not system.finite:
        raise RefusesTailSpace("the oracle command needs a finite space")
    if options.trials and options.seed is None:
        raise ValueError("--seed is required when --trials is nonzero")
    try:
        rep = oracle_verdicts(system, options.max_order, options.trials, options.seed,
                              tol=options.tolerance)
    except OracleMismatch as exc:
        rep = exc.report
    doc = _header(system)
    doc["options"] = {"max_order": options.max_order, "trials": options.trials, "seed": options.seed}
    doc["orders"] = [{
        "n": o.n,
        "expansive": "yes" if o.expansive else "no",
        "isometry": "yes" if o.isometry else "no",
        "gram_diagonal": o.diagonal,
        "gram_diagonal_values": [fmt(v) if not hasattr(v, "terms") else repr(v) for v in o.diagonal_values],
        "samples": o.samples,
        "positive_theta_found": o.positive_found,
        "max_theta": None if o.max_theta is None else fmt(o.max_theta),
    } for o in rep.orders]
    doc["agreement"] = "full" if rep.agreement else "partial"
    doc["mismatches"] = list(rep.mismatches)
    return doc, EXIT_OK if rep.agreement else EXIT_FINDING


def generate_example(name: str, params=()) -> dict:
    return serialize_spec(catalog.build(name, list(params)))


# ---------------------------------------------------------------------------
# text rendering and entry point


def render_text(doc: dict) -> str:
    lines = []

    def emit(key, value, indent=0):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                emit(f"- [{i}]", v, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {', '.join(str(v) for v in value)}")
        else:
            lines.append(f"{pad}{key}: {value}")

    for k, v in doc.items():
        emit(k, v)
    return "\n".join(lines) + "\n"


def _dump(doc: dict, form: str) -> str:
    if form == "text":
        return render_text(doc)
    return json.dumps(doc, indent=2) + "\n"


def _load(path: str):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _merge(options: RunOptions, args, names) -> RunOptions:
    given = {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}
    return replace(options, **given)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wcop", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"wcop {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="pointwise verdicts and theorem audits")
    c.add_argument("spec", help="spec document path, or - for stdin")
    c.add_argument("--max-order", type=int, dest="max_order")
    c.add_argument("--alt-shifts", type=int, dest="alt_shifts")
    c.add_argument("--alt-depth", type=int, dest="alt_depth")
    c.add_argument("--tolerance", type=float)
    c.add_argument("--format", choices=["json", "text"], default="json")

    o = sub.add_parser("oracle", help="brute-force matrix verdicts (finite spaces)")
    o.add_argument("spec")
    o.add_argument("--max-order", type=int, dest="max_order")
    o.add_argument("--trials", type=int)
    o.add_argument("--seed", type=int)
    o.add_argument("--format", choices=["json", "text"], default="json")

    e = sub.add_parser("example", help="emit a ready-to-run spec document")
    e.add_argument("name", choices=sorted(catalog.CATALOG))
    e.add_argument("params", nargs="*")
    e.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "example":
            text = json.dumps(generate_example(args.name, args.params), indent=2) + "\n"
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                out.write(text)
            return EXIT_OK
        system, options = parse_spec(_load(args.spec))
        if args.command == "classify":
            options = _merge(options, args, ["max_order", "alt_shifts", "alt_depth", "tolerance"])
            doc, status = run_classify(system, options)
        else:
            options = _merge(options, args, ["max_order", "trials", "seed"])
            doc, status = run_oracle(system, options)
    except (ParseError, ValidationError, RefusesTailSpace, UnknownExample, OSError, ValueError) as exc:
        print(f"wcop: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.write(_dump(doc, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
