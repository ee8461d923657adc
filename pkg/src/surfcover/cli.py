"""``surfcover`` console script.

    surfcover verify pgq0 [--seed N] [--json PATH]
    surfcover resolve --curve FILE --point "x,y,z"
    surfcover irreducible --curve FILE
    surfcover intersect --curve-a FILE --curve-b FILE --point "x,y,z"
    surfcover linsys --degree D --conditions FILE

Exit codes: 0 on PASS (or a completed computation), 1 on a FAILed scenario
or a computation error, 2 on usage and fixture errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from surfcover.config.run import RunConfig
from surfcover.config.scenario import SCENARIO_NAMES, load_conditions
from surfcover.engine.orchestrator import run_scenario
from surfcover.engine.tools import intersect_curves, irreducible_curve, linsys_summary, resolve_curve
from surfcover.errors import FixtureError, SurfcoverError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FixtureError(f"curve file not found: {p}")
    return p.read_text(encoding="utf-8")


def _emit(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


# ── subcommands ─────────────────────────────────────────────────────────────

def _verify(args: argparse.Namespace) -> int:
    config = RunConfig(seed=args.seed, depth_cap=args.depth_cap)
    report = run_scenario(args.scenario, config)
    text = report.to_json()
    if args.json == "-":
        print(text)
    elif args.json:
        Path(args.json).write_text(text + "\n", encoding="utf-8")
    if args.json != "-":
        for entry in report.checks:
            print(f"{entry.status:8} {entry.id}")
        inv = report.invariants
        print(f"invariants: chi={inv.chi} pg={inv.pg} K^2={inv.Ksq} K^2_min={inv.Ksq_min}")
        print("PASS" if report.passed else f"FAIL ({len(report.failures)} checks)")
    return EXIT_OK if report.passed else EXIT_FAIL


def _resolve(args: argparse.Namespace) -> int:
    _emit(resolve_curve(_read(args.curve), args.point, args.depth_cap))
    return EXIT_OK


def _irreducible(args: argparse.Namespace) -> int:
    _emit(irreducible_curve(_read(args.curve), args.seed))
    return EXIT_OK


def _intersect(args: argparse.Namespace) -> int:
    _emit(intersect_curves(_read(args.curve_a), _read(args.curve_b), args.point))
    return EXIT_OK


def _linsys(args: argparse.Namespace) -> int:
    _emit(linsys_summary(args.degree, load_conditions(args.conditions), args.seed))
    return EXIT_OK


# ── parser ──────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfcover", description="Exact checks of bidouble-cover constructions over Q(i)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one scenario and report every check")
    verify.add_argument("scenario", choices=SCENARIO_NAMES)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--depth-cap", type=int, default=16)
    verify.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    verify.set_defaults(func=_verify)

    resolve = sub.add_parser("resolve", help="resolve a curve at a point")
    resolve.add_argument("--curve", required=True, metavar="FILE")
    resolve.add_argument("--point", required=True, help='"x,y,z" over Q(i)')
    resolve.add_argument("--depth-cap", type=int, default=16)
    resolve.set_defaults(func=_resolve)

    irreducible = sub.add_parser("irreducible", help="count absolute factors of a curve")
    irreducible.add_argument("--curve", required=True, metavar="FILE")
    irreducible.add_argument("--seed", type=int, default=0)
    irreducible.set_defaults(func=_irreducible)

    intersect = sub.add_parser("intersect", help="local intersection number of two curves")
    intersect.add_argument("--curve-a", required=True, metavar="FILE")
    intersect.add_argument("--curve-b", required=True, metavar="FILE")
    intersect.add_argument("--point", required=True, help='"x,y,z" over Q(i)')
    intersect.set_defaults(func=_intersect)

    linsys = sub.add_parser("linsys", help="dimension and a member of a linear system")
    linsys.add_argument("--degree", type=int, required=True)
    linsys.add_argument("--conditions", required=True, metavar="FILE", help="YAML with points, lines, conditions")
    linsys.add_argument("--seed", type=int, default=None, help="take a seeded combination of the kernel basis")
    linsys.set_defaults(func=_linsys)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        format="%(name)s:%(levelname)s:%(message)s",
        level=logging.DEBUG if args.verbose else logging.WARNING,
    )
    try:
        return args.func(args)
    except (FixtureError, ValidationError) as exc:
        print(f"surfcover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SurfcoverError as exc:
        print(f"surfcover: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
