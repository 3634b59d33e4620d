"""Command-line front end: ``radkernel validate FILE`` and ``radkernel verify --suite NAME``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bundle import bundled, bundled_names, load_bundle
from .errors import IdealNotPreserved, RadkernelError
from .suites import SUITES, Options, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _resolve(name: str):
    """A path on disk, or the stem of a bundled example (``word_yy`` or ``word_yy.json``)."""
    p = Path(name)
    if p.exists():
        return load_bundle(p)
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in bundled_names():
        return bundled(stem)
    raise FileNotFoundError(f"no such file or bundled example: {name}")


def _diagnose(e: Exception) -> str:
    if isinstance(e, IdealNotPreserved):
        return f"IdealNotPreserved: {e}"
    return f"{type(e).__name__}: {e}"


_LOAD_ERRORS = (RadkernelError, ValueError, KeyError, TypeError, json.JSONDecodeError, OSError)


def cmd_validate(args) -> int:
    try:
        b = _resolve(args.file)
    except _LOAD_ERRORS as e:
        print(f"invalid: {_diagnose(e)}", file=sys.stderr)
        return EXIT_USAGE
    print("valid")
    print(b.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        bundle = _resolve(args.algebra) if args.algebra else None
    except _LOAD_ERRORS as e:
        print(f"invalid algebra file: {_diagnose(e)}", file=sys.stderr)
        return EXIT_USAGE
    opts = Options(seed=args.seed, trials=args.trials, budget=args.budget, m_max=args.m_max,
                   n_max=args.n_max, assert_no_common_zero=args.assert_no_common_zero, bundle=bundle)
    start = time.perf_counter()
    try:
        rep = run_suite(args.suite, opts)
    except RadkernelError as e:
        print(f"error: {_diagnose(e)}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = 0 if args.no_timing else int((time.perf_counter() - start) * 1000)
    out = {
        "suite": args.suite,
        "version": __version__,
        "seed": args.seed,
        "checks": [c.to_json() for c in rep],
        "elapsed_ms": elapsed,
    }
    text = json.dumps(out, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        stream = sys.stderr if not args.out else sys.stdout
        for c in rep:
            print(f"{c.status:>18}  {c.name}", file=stream)
        print(f"{len(rep.failed)} failed of {len(rep)} checks", file=stream)
    return EXIT_FAIL if rep.failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="radkernel", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse an algebra file and print a summary")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("verify", help="run a verification suite")
    r.add_argument("--suite", required=True, choices=SUITES + ("all",))
    r.add_argument("--algebra", metavar="FILE")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--budget", type=int, default=64)
    r.add_argument("--m-max", type=int, default=8)
    r.add_argument("--n-max", type=int, default=8)
    r.add_argument("--assert-no-common-zero", action="store_true",
                   help="assume the operator polynomials have no common zero besides the origin")
    r.add_argument("--out", metavar="FILE")
    r.add_argument("--quiet", action="store_true")
    r.add_argument("--no-timing", action="store_true", help="write elapsed_ms as 0 for byte-stable reports")
    r.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "trials", 1) < 1 or getattr(args, "n_max", 1) < 1 or getattr(args, "m_max", 1) < 1:
        print("error: --trials, --m-max and --n-max must be positive", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
