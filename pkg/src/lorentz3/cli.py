"""Command-line interface: ``report``, ``classify``, ``catalog`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 input/parse error,
3 metric not Lorentzian, 4 structure constants not a unimodular Lie algebra.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog as cat
from .io import (
    InputError,
    dumps,
    family_report,
    load_algebra,
    parse_family,
    parse_group,
    parse_metric,
    parse_params,
    report_document,
    summary_line,
)
from .lie import MODELS, InvalidAlgebraError, InvalidMetricError
from .linalg import default_tol

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_METRIC, EXIT_ALGEBRA = 0, 1, 2, 3, 4

_ORIENT = {"+": 1, "-": -1, "auto": "auto"}


def _input_metric(args):
    """(algebra, group, metric, source echo) from ``--family`` or ``--group``/``--algebra`` + ``--metric``."""
    if args.family:
        rec = cat.family(parse_family(args.family))
        params = parse_params(args.params)
        try:
            group, G = cat.build_metric(rec, params)
        except cat.DomainError as exc:
            raise InputError(str(exc)) from None
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return MODELS[group], group, G, {"family": rec.id.value, "params": dict(zip(rec.params, params))}
    if args.metric is None:
        raise InputError("either --family or --metric is required")
    G = parse_metric(args.metric)
    if args.algebra:
        alg = load_algebra(args.algebra, args.tol)
        return alg, None, G, {"algebra": args.algebra}
    if not args.group:
        raise InputError("--metric needs --group or --algebra")
    group = parse_group(args.group)
    if group not in MODELS:
        raise InputError(f"no model algebra for group {group.value}")
    return MODELS[group], group, G, {}


def cmd_report(args) -> int:
    alg, group, G, source = _input_metric(args)
    doc = report_document(alg, G, args.tol, group, source, args.timing, _ORIENT[args.orientation])
    for w in doc["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    print(dumps(doc))
    return EXIT_OK


def cmd_classify(args) -> int:
    alg, _, G, _ = _input_metric(args)
    try:
        cls = cat.classify_metric(alg, G, args.tol, _ORIENT[args.orientation])
    except cat.ClassificationError as exc:
        doc = {"family": None, "error": str(exc),
               "operator_type": None if exc.optype is None else exc.optype.label,
               "operator_params": None if exc.optype is None else exc.optype.params()}
        print(dumps(doc) if args.format == "json" else f"unclassified: {exc}")
        return EXIT_OK
    doc = cls.to_json()
    doc["summary"] = summary_line(cls.family.value, cls.params)
    for w in cls.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(dumps(doc) if args.format == "json" else doc["summary"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        docs = cat.catalog_json()
        if args.format == "json":
            print(dumps(docs))
        else:
            for d in docs:
                print(f"{d['id']:<9} {d['group']:<8} arity={d['arity']}  {d['domain']}")
        return EXIT_OK
    if not args.name:
        raise InputError("catalog show needs a family name")
    rec = cat.family(parse_family(args.name))
    doc = rec.to_json()
    doc["signature_rows"] = [{"condition": r.condition, "signature": r.expected.signs(), "realizable": r.realizable,
                              "note": r.note} for r in rec.signature_rows]
    doc["possible_signatures"] = [s.signs() for s in rec.possible_signatures]
    doc["errata"] = [{"item": e.item, "printed": e.printed, "corrected": e.corrected} for e in cat.errata_for(rec.id)]
    if args.format == "json":
        print(dumps(doc))
    else:
        print(f"{doc['id']} on {doc['group']}  params={doc['params']}  domain: {doc['domain']}")
        if doc["flat_locus"]:
            print(f"  {doc['flat_locus']}")
        for n in doc["notes"]:
            print(f"  note: {n}")
    return EXIT_OK


def _verify_point(rec, p, tol, witnesses: bool):
    items = list(cat.verify_family(rec, p, tol).items)
    if witnesses:
        items.extend(cat.witness_check(rec, p, tol).items)
    return items


def cmd_verify(args) -> int:
    tol = default_tol() if args.tol is None else args.tol
    if args.all == bool(args.family):
        raise InputError("give exactly one of --all or --family")
    fids = list(cat.FAMILIES) if args.all else [parse_family(args.family)]
    rows, bad_total = [], 0
    counted = ("fail",) if args.allow_errata else ("fail", "paper-erratum")
    for fid in fids:
        rec = cat.family(fid)
        counts: dict[str, int] = {}
        failures = []
        pts = cat.design_grid(rec, args.grid)
        for p in pts:
            for item in _verify_point(rec, p, tol, not args.no_witness):
                counts[item.status] = counts.get(item.status, 0) + 1
                if item.status in ("fail", "paper-erratum", "paper-ambiguous", "unrealizable"):
                    failures.append({"params": list(p), **item.to_json()})
        bad = sum(counts.get(s, 0) for s in counted)
        bad_total += bad
        rows.append({"family": rec.id.value, "points": len(pts), "status": "pass" if bad == 0 else "fail",
                     "counts": dict(sorted(counts.items())), "findings": failures})
    if args.format == "json":
        print(dumps({"tol": tol, "grid": args.grid, "allow_errata": args.allow_errata, "families": rows}))
    else:
        for r in rows:
            c = r["counts"]
            extra = ", ".join(f"{k}={v}" for k, v in c.items() if k != "pass")
            print(f"{r['family']:<9} {r['status']:<5} points={r['points']:<4} pass={c.get('pass', 0):<5} {extra}")
            if args.verbose:
                for f in r["findings"]:
                    print(f"    {f['status']:<16} {f['name']} at {f['params']}: {f['detail']}")
        n_ok = sum(r["status"] == "pass" for r in rows)
        print(f"{n_ok}/{len(rows)} families pass")
    return EXIT_OK if bad_total == 0 else EXIT_VERIFY


def _add_input(p):
    p.add_argument("--group", help="model group: nil, su2, sl2, sol, e2")
    p.add_argument("--algebra", help="JSON file with structure constants (instead of --group)")
    p.add_argument("--metric", help='metric rows "a,b,c;d,e,f;g,h,i" (lower triangle read) or a JSON file')
    p.add_argument("--family", help="catalog family id (instead of --metric)")
    p.add_argument("--params", help="comma-separated family parameters")
    p.add_argument("--orientation", choices=("+", "-", "auto"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lorentz3", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=None, help="tolerance (default: LORENTZ3_TOL or 1e-9)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="full curvature report for one metric")
    _add_input(p)
    p.add_argument("--timing", action="store_true", help="add wall-clock timing (output no longer byte-stable)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("classify", help="catalog family and parameters of a metric")
    _add_input(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="list or show catalog families")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="check the catalog over parameter grids")
    p.add_argument("--all", action="store_true")
    p.add_argument("--family")
    p.add_argument("--grid", type=int, default=5, help="points per parameter axis")
    p.add_argument("--allow-errata", action="store_true",
                   help="do not count published values contradicted by a documented correction as failures")
    p.add_argument("--no-witness", action="store_true", help="skip the automorphism witness audit")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.tol is not None and not args.tol > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_PARSE
    if getattr(args, "grid", 1) < 1:
        print("error: --grid must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METRIC
    except InvalidAlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA


if __name__ == "__main__":
    sys.exit(main())
