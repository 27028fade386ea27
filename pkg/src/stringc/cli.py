"""Command-line entry point: ``stringc build | certify | verify``.

Exit codes: 0 pass, 1 certified negative, 2 usage or parse error,
3 enumeration limit hit, 4 claim failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import families, verify
from .coset import EnumerationLimits, LimitExceeded
from .families import BadParam, Type1Params, Type2Params
from .fpcore import Presentation
from .sggi import certify
from .textformat import ParseError, format_presentation, parse_presentation

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT, EXIT_FAIL = 0, 1, 2, 3, 4

BUILD_TAGS = ("L1", "L2", "M1", "M2", "type1", "U", "G", "H", "I")


def build_presentation(args: argparse.Namespace) -> Presentation:
    tag = args.family
    if tag in ("L1", "L2"):
        return families.build_degenerate(_need(args, "k"), int(tag[1]))
    if tag in ("M1", "M2"):
        return families.build_type44(_need(args, "b"), int(tag[1]))
    if tag == "type1":
        return families.build_type1(Type1Params(
            _need(args, "s"), _need(args, "t"), _need(args, "n"), args.l1, args.l2))
    if tag == "U":
        return families.build_U()
    return families.build_type2(Type2Params(tag, args.m))


def _need(args: argparse.Namespace, name: str) -> int:
    v = getattr(args, name)
    if v is None:
        raise BadParam(f"--{name} is required for {args.family}")
    return v


def cmd_build(args: argparse.Namespace) -> int:
    sys.stdout.write(format_presentation(build_presentation(args)))
    return EXIT_OK


def _read_source(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def cmd_certify(args: argparse.Namespace) -> int:
    pres = parse_presentation(_read_source(args.file))
    limits = EnumerationLimits.from_env(args.max_cosets)
    t0 = time.perf_counter()
    try:
        cert = certify(pres, limits=limits)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    elapsed = (time.perf_counter() - t0) * 1000
    record = cert.as_dict()
    if args.file not in (None, "-"):
        record["params"] = {"source": args.file}
    record["elapsed_ms"] = round(elapsed, 3)
    if args.json:
        print(json.dumps(record, separators=(",", ":")))
    else:
        for key, value in record.items():
            print(f"{key}: {json.dumps(value)}")
        print(f"string_c_group: {json.dumps(cert.is_string_c_group)}")
    return EXIT_OK if cert.is_string_c_group else EXIT_NEGATIVE


def _grid(args: argparse.Namespace) -> verify.Grid:
    g = verify.Grid()
    kw: dict[str, object] = {}
    if args.k:
        kw["k"] = tuple(args.k)
    if args.b:
        kw["b"] = tuple(args.b)
    if any(v is not None for v in (args.s, args.t, args.l1, args.l2, args.n)):
        points = []
        for s in args.s or (2, 3):
            for t in args.t or (2, 3):
                ns = args.n or range(s + t + 1, s + t + 5)
                for l1 in args.l1 or (1, 3, 5):
                    for l2 in args.l2 or (1, 3):
                        for n in ns:
                            points.append(Type1Params(s, t, n, l1, l2))
        kw["thm4"] = tuple(points)
    if args.family or args.m:
        fams = tuple(args.family or families.FAMILY_TAGS)
        ms = tuple(args.m or (1, 2))
        kw["thm5"] = tuple(Type2Params(f, m) for m in ms for f in fams)
        kw["families"] = fams
    if args.cor_n:
        for n in args.cor_n:
            verify.cor52_params(n)
        kw["cor52"] = tuple(args.cor_n)
    return verify.Grid(**{**g.__dict__, **kw})


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite is None and not args.explore:
        raise BadParam("give a suite or --explore FILES")
    limits = EnumerationLimits.from_env(args.max_cosets)
    reports = []
    if args.suite is not None:
        reports += verify.run_suite(args.suite, _grid(args), args.jobs, limits)
    if args.explore:
        pres = [(f, parse_presentation(Path(f).read_text())) for f in args.explore]
        reports += verify.explore(pres, limits)
    sys.stdout.write(verify.to_csv(reports))
    if args.jsonl:
        Path(args.jsonl).write_text(verify.to_jsonl(reports))
    if any(r.hit_limit for r in reports):
        return EXIT_LIMIT
    if not all(r.passed for r in reports):
        return EXIT_FAIL
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stringc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="print a family presentation")
    b.add_argument("family", choices=BUILD_TAGS)
    for name in ("k", "b", "s", "t", "n"):
        b.add_argument(f"--{name}", type=int)
    b.add_argument("--l1", type=int, default=1)
    b.add_argument("--l2", type=int, default=1)
    b.add_argument("--m", type=int, default=1)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("certify", help="certify a presentation file (or stdin)")
    c.add_argument("file", nargs="?", help="presentation file, '-' or omitted for stdin")
    c.add_argument("--max-cosets", type=int)
    c.add_argument("--json", action="store_true", help="print one JSON object")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="run claim suites over parameter grids")
    v.add_argument("suite", nargs="?", choices=verify.SUITES + ("all",))
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--jsonl", metavar="PATH", help="write JSON-lines reports here")
    v.add_argument("--max-cosets", type=int)
    v.add_argument("--explore", nargs="+", metavar="FILE",
                   help="also certify these presentations; recorded, never asserted")
    v.add_argument("--k", type=int, nargs="+", help="prop21 k values")
    v.add_argument("--b", type=int, nargs="+", help="prop23 b values")
    for name in ("s", "t", "n", "l1", "l2"):
        v.add_argument(f"--{name}", type=int, nargs="+", help=f"thm4 {name} values")
    v.add_argument("--family", choices=families.FAMILY_TAGS, nargs="+",
                   help="thm5 and subgroups families")
    v.add_argument("--m", type=int, nargs="+", help="thm5 m values")
    v.add_argument("--cor-n", type=int, nargs="+", help="cor52 n values (>= 6)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ParseError, BadParam, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
