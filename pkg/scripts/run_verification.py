"""Run the catalog verification over the design grids and write a JSON report.

Wraps ``lorentz3 verify --all`` and adds a per-status summary.  Published
values contradicted by a verified correction appear as ``paper-erratum``
findings; pass ``--allow-errata`` to exclude them from the exit status.

Example::

    python scripts/run_verification.py --grid 5 --out verification.json
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from collections import Counter

from lorentz3.cli import main as cli_main


def run(grid: int, tol: float | None, allow_errata: bool) -> tuple[int, dict]:
    argv = [] if tol is None else ["--tol", str(tol)]
    argv += ["verify", "--all", "--grid", str(grid), "--format", "json"]
    if allow_errata:
        argv.append("--allow-errata")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, json.loads(buf.getvalue())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=5)
    ap.add_argument("--tol", type=float, default=None)
    ap.add_argument("--allow-errata", action="store_true")
    ap.add_argument("--out", help="write the full JSON report here")
    args = ap.parse_args(argv)

    code, doc = run(args.grid, args.tol, args.allow_errata)
    totals: Counter = Counter()
    for fam in doc["families"]:
        totals.update(fam["counts"])
        findings = Counter((f["name"], f["status"]) for f in fam["findings"])
        line = ", ".join(f"{name} {status} x{n}" for (name, status), n in sorted(findings.items()))
        print(f"{fam['family']:<9} {fam['status']:<5} {fam['points']:>4} points  {line}")
    print("checks by status:", dict(sorted(totals.items())))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
        print(f"report written to {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
