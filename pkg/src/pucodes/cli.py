"""``pucodes`` command-line tool.

Subcommands: ``generate``, ``verify``, ``correlate``, ``catalog`` and
``selfcheck``.  Exit status is 0 on success, 1 when a verification fails and
2 for usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constellations import CATALOG_NAMES, catalog_lookup
from .correlation import VerificationReport, ccc_check, complementarity_check
from .correlator import build_matched_filter, correlate_stream, op_count
from .errors import PucodesError
from .generator import generate_set, transpose_generator
from .randomspec import random_generator
from .rings import DEFAULT_TOL
from .serialize import (columns_text, format_scalar, load_spec, read_samples, read_sequences,
                        sequences_text, write_columns, write_sequences)

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(PucodesError):
    pass


def _tolerance(arg: float | None) -> float:
    if arg is not None:
        return arg
    env = os.environ.get("PUCODES_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"PUCODES_TOL={env!r} is not a number") from None
    return DEFAULT_TOL


def _constant_text(c) -> str:
    if c.ring.exact and not any(c.coords[1:]):
        return str(c.coords[0])
    return format_scalar(c)


def _set_paths(out: Path, m: int) -> list[Path]:
    return [out.with_name(f"{out.stem}_set{r}{out.suffix}") for r in range(m)]


# --------------------------------------------------------------------------

def cmd_generate(args) -> int:
    spec = load_spec(args.spec)
    g = spec.generator
    axis = spec.orientation
    if args.transpose:
        axis = "column" if axis == "row" else "row"
    method = args.method
    if method == "rmg" and not g.is_standard:
        raise UsageError("--rmg needs a standard delay plan")
    indices = range(g.m) if args.all_sets else [spec.set_index]
    sets = [generate_set(g, r, method=method, axis=axis) for r in indices]
    info = sys.stderr if args.output is None else sys.stdout
    print(f"M={g.m} K={g.k} L={g.length} C={_constant_text(g.constant)} "
          f"kind={g.ring.name} sets={list(indices)} axis={axis}", file=info)
    if args.output is None:
        for s in sets:
            sys.stdout.write(sequences_text(s))
        return EXIT_OK
    out = Path(args.output)
    paths = _set_paths(out, g.m) if args.all_sets else [out]
    for path, s in zip(paths, sets):
        write_sequences(path, s)
        print(f"wrote {path}", file=info)
    return EXIT_OK


def _report_json(command: str, check: str, reports: list[VerificationReport], files) -> dict:
    return {
        "report_version": REPORT_VERSION,
        "command": command,
        "check": check,
        "passed": all(r.passed for r in reports),
        "files": [str(f) for f in files],
        "reports": [r.to_dict() for r in reports],
    }


def cmd_verify(args) -> int:
    tol = _tolerance(args.tol)
    sets = [read_sequences(p) for p in args.files]
    if args.ccc:
        reports = [ccc_check(sets, tol=tol, scale=args.relative)]
        check = "ccc"
    else:
        reports = [complementarity_check(s, tol=tol, scale=args.relative) for s in sets]
        check = "complementarity"
    doc = _report_json("verify", check, reports, args.files)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for path, rep in zip(args.files if not args.ccc else [", ".join(args.files)], reports):
            print(f"{path}: {rep.summary()}")
            for note in rep.notes:
                print(f"  note: {note}")
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_correlate(args) -> int:
    spec = load_spec(args.spec)
    g = spec.generator
    if spec.orientation == "column":
        g = transpose_generator(g)
    f = build_matched_filter(g)
    port = spec.set_index if args.port is None else args.port
    samples = read_samples(args.input, g.ring)
    out = correlate_stream(f, port, samples, normalize=args.normalize, backend=args.backend)
    if args.output is None:
        sys.stdout.write(columns_text(out))
    else:
        write_columns(args.output, out)
    ops = op_count(f)
    print(f"op count per sample: cascade {ops.cascade} vs direct {ops.direct} "
          f"(M={ops.m}, K={ops.k}, L={ops.length}, ratio {ops.ratio:.2f})",
          file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name is None:
        for name in CATALOG_NAMES:
            print(name)
        return EXIT_OK
    entry = catalog_lookup(args.name, args.m)
    if args.json:
        print(json.dumps({"name": entry.name, "m": entry.m, "kind": entry.ring.name,
                          "constant": entry.constant.to_json(),
                          "matrix": [[v.to_json() for v in row] for row in entry.rows()]},
                         indent=2))
    else:
        print(f"# {entry.name}: M={entry.m} kind={entry.ring.name} "
              f"C={_constant_text(entry.constant)}")
        for row in entry.rows():
            print(",".join(format_scalar(v) for v in row))
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    """Random generate -> verify round trips, reproducible from ``--seed``."""
    rng = np.random.default_rng(args.seed)
    failures = 0
    for i in range(args.cases):
        m = int(rng.integers(2, 6))
        k = int(rng.integers(0, 4))
        g = random_generator(rng, m, k, standard=bool(rng.integers(2)))
        sets = [generate_set(g, r) for r in range(m)]
        rep = ccc_check(sets, tol=_tolerance(None), scale=True)
        if not rep.passed:
            failures += 1
            print(f"case {i}: M={m} K={k} kind={g.ring.name}: {rep.summary()}")
    print(f"selfcheck seed={args.seed}: {args.cases - failures}/{args.cases} passed")
    return EXIT_OK if failures == 0 else EXIT_FAIL


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pucodes", description=(
        "Complementary sets and complete complementary codes from paraunitary "
        "generating matrices, with an efficient matched-filter correlator."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate sets from a spec file")
    g.add_argument("spec", help="JSON spec file")
    g.add_argument("-o", "--output", help="output sequence file (.csv or .json); stdout if omitted")
    g.add_argument("--all-sets", action="store_true",
                   help="write every set (OUTPUT_setR.EXT per set)")
    g.add_argument("--transpose", action="store_true",
                   help="take columns instead of rows (or vice versa)")
    mg = g.add_mutually_exclusive_group()
    mg.add_argument("--pu", dest="method", action="store_const", const="pu",
                    help="polynomial-matrix product (default)")
    mg.add_argument("--rmg", dest="method", action="store_const", const="rmg",
                    help="radix-M closed form (standard delays only)")
    mg.add_argument("--recursive", dest="method", action="store_const", const="recursive",
                    help="stage recursion on a row vector")
    g.set_defaults(method="pu", func=cmd_generate)

    v = sub.add_parser("verify", help="check complementarity or CCC orthogonality")
    v.add_argument("files", nargs="+", help="sequence files, one set per file")
    v.add_argument("--ccc", action="store_true", help="treat the files as one code")
    v.add_argument("--tol", type=float, default=None,
                   help=f"float tolerance (default $PUCODES_TOL or {DEFAULT_TOL})")
    v.add_argument("--relative", action="store_true",
                   help="scale the tolerance by L times the peak magnitude squared")
    v.add_argument("--json", action="store_true", help="print the JSON report")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("correlate", help="run the matched-filter cascade over samples")
    c.add_argument("spec", help="JSON spec file")
    c.add_argument("input", help="sample file (.csv cells in order, or a .json array)")
    c.add_argument("-o", "--output", help="output file, one row per time step")
    c.add_argument("--port", type=int, default=None, help="input port (default: spec set_index)")
    c.add_argument("--normalize", action="store_true", help="divide outputs by C")
    c.add_argument("--backend", choices=["cython", "python"], default=None)
    c.set_defaults(func=cmd_correlate)

    k = sub.add_parser("catalog", help="list or show catalog unitaries")
    k.add_argument("name", nargs="?", help="catalog name")
    k.add_argument("-m", type=int, default=None, help="size for dft / hadamard")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_catalog)

    s = sub.add_parser("selfcheck", help="randomized generate/verify round trips")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=50)
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PucodesError, ValueError, TypeError, IndexError, OSError) as exc:
        print(f"pucodes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
