"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .cache import CacheLockError, ExactCache, format_rational
from .combinatorics import theta_recursive
from .genus0 import DescendantSpec, count_rational, descendant
from .pipeline import InconsistencyError, MissingFixtureError, RTFixtureTable, nodal_report
from .problem import ConstraintError, DimensionMismatchError, ProblemSpec, require_genus0, require_nodal
from .selftest import run_selftest

__all__ = ["ProblemParseError", "parse_problem", "run_cli", "main"]

log = logging.getLogger("nodalcount")


class ProblemParseError(ValueError):
    """Malformed problem file."""


def parse_problem(text: str, base_dir: str | Path | None = None) -> tuple[ProblemSpec, dict]:
    """Parse a JSON problem description into a spec plus options.

    Recognized options: ``rt_fixtures`` (resolved against ``base_dir``).
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ProblemParseError("problem must be a JSON object")
    for name in ("n", "d"):
        if name not in raw:
            raise ProblemParseError(f"missing field {name!r}")
        if isinstance(raw[name], bool) or not isinstance(raw[name], int):
            raise ProblemParseError(f"field {name!r} must be an integer, got {raw[name]!r}")
    constraints = raw.get("constraints")
    if not isinstance(constraints, list) or any(
        isinstance(c, bool) or not isinstance(c, int) for c in constraints
    ):
        raise ProblemParseError("field 'constraints' must be an array of integer codimensions")
    try:
        spec = ProblemSpec(raw["n"], raw["d"], constraints)
    except ConstraintError:
        raise
    except ValueError as exc:
        raise ProblemParseError(str(exc)) from None
    options: dict = {}
    if raw.get("rt_fixtures") is not None:
        path = Path(raw["rt_fixtures"])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        options["rt_fixtures"] = path
    return spec, options


def _spec_from_args(args) -> tuple[ProblemSpec, dict]:
    if args.input:
        path = Path(args.input)
        return parse_problem(path.read_text(encoding="utf-8"), path.parent)
    if args.n is None or args.d is None:
        raise ProblemParseError("give --input or both --n and --d")
    codims = [int(c) for c in args.constraints.split(",") if c.strip()] if args.constraints else []
    return ProblemSpec(args.n, args.d, codims), {}


def _envelope(spec: ProblemSpec | None, result, cache: ExactCache | None, **extra) -> dict:
    out = {
        "inputs": None
        if spec is None
        else {"n": spec.n, "d": spec.d, "constraints": list(spec.mu.codims)},
        "result": None if result is None else format_rational(result),
        "cr1_eta": None,
        "cr1_theta": None,
        "terms": [],
        "cache": cache.stats() if cache else {"hits": 0, "misses": 0},
    }
    out.update(extra)
    return out


def _cached(cache: ExactCache | None, kind: str, spec: ProblemSpec, compute, **params) -> Fraction:
    if cache is not None:
        hit = cache.get_invariant(kind, spec, **params)
        if hit is not None:
            return hit
    value = compute()
    if cache is not None:
        cache.put_invariant(kind, spec, value, **params)
    return value


def _cmd_rational(args, cache):
    spec, _ = _spec_from_args(args)
    require_genus0(spec)
    value = _cached(cache, "rational", spec, lambda: count_rational(spec))
    return _envelope(spec, value, cache)


def _cmd_descendant(args, cache):
    spec, _ = _spec_from_args(args)
    dspec = DescendantSpec(spec.n, spec.d, args.b, args.c, spec.mu)
    value = _cached(cache, "descendant", spec, lambda: descendant(dspec), b=args.b, c=args.c)
    return _envelope(spec, value, cache)


def _cmd_theta(args, cache):
    return _envelope(None, theta_recursive(args.k, args.m), cache, inputs={"k": args.k, "m": args.m})


def _cmd_cr1(args, cache, with_rt: bool = False):
    spec, options = _spec_from_args(args)
    require_nodal(spec)
    fixtures = None
    if with_rt:
        path = args.rt_fixtures or options.get("rt_fixtures")
        if path is None:
            raise MissingFixtureError("no --rt-fixtures file given")
        fixtures = RTFixtureTable.load(path)
    report = nodal_report(spec, fixtures, cache)
    if cache is not None:
        cache.put_invariant("cr1", spec, report.cr1_eta_value)
        if report.nodal_count is not None:
            cache.put_invariant("nodal", spec, report.nodal_count)
    body = report.to_dict()
    if cache is not None:
        body["cache"] = cache.stats()
    if not with_rt:
        body["result"] = body["cr1_eta"]
    return body


def _text(command: str, body: dict) -> str:
    if command == "selftest":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}" for c in body["checks"]]
        lines.append("selftest passed" if body["passed"] else "selftest FAILED")
        return "\n".join(lines)
    lines = [str(body["result"])]
    if command in ("cr1", "nodal"):
        lines.append(f"cr1_eta = {body['cr1_eta']}")
        lines.append(f"cr1_theta = {body['cr1_theta']}")
        if body.get("rt") is not None:
            lines.append(f"rt = {body['rt']}")
        for t in body["terms"]:
            lines.append(f"  k={t['k']}: eta {t['eta']}, theta {t['theta']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodalcount", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON problem file")
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--constraints", help="comma-separated codimensions, e.g. 2,2,3")
    common.add_argument("--rt-fixtures", help="JSON file of genus-one invariants")
    common.add_argument("--cache", help="JSON-lines cache file")
    common.add_argument("--format", choices=("json", "text"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rational", parents=[common], help="genus-zero count n_d(mu)")
    sub.add_parser("nodal", parents=[common], help="one-nodal count (needs RT fixtures)")
    sub.add_parser("cr1", parents=[common], help="CR_1 by both routes")
    desc = sub.add_parser("descendant", parents=[common], help="one-point descendant invariant")
    desc.add_argument("--b", type=int, required=True, help="psi exponent at the special point")
    desc.add_argument("--c", type=int, required=True, help="hyperplane exponent at the special point")
    theta = sub.add_parser("theta", parents=[common], help="Theta(k, m)")
    theta.add_argument("--k", type=int, required=True)
    theta.add_argument("--m", type=int, required=True)
    sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    return parser


COMMANDS = {
    "rational": _cmd_rational,
    "descendant": _cmd_descendant,
    "theta": _cmd_theta,
    "cr1": _cmd_cr1,
    "nodal": lambda args, cache: _cmd_cr1(args, cache, with_rt=True),
}


def run_cli(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = None
    try:
        if args.cache:
            cache = ExactCache(args.cache)
        if args.command == "selftest":
            body = run_selftest()
        else:
            body = COMMANDS[args.command](args, cache)
    except (
        ProblemParseError,
        ConstraintError,
        DimensionMismatchError,
        MissingFixtureError,
        CacheLockError,
        OSError,
        ValueError,
    ) as exc:
        print(f"nodalcount {args.command}: error: {exc}", file=err)
        return 2
    except InconsistencyError as exc:
        print(f"nodalcount {args.command}: internal inconsistency: {exc}", file=err)
        if exc.report is not None:
            print(json.dumps(exc.report.to_dict(), indent=2), file=err)
        return 3
    finally:
        if cache is not None:
            cache.close()
    if args.format == "json":
        print(json.dumps(body, indent=2), file=out)
    else:
        print(_text(args.command, body), file=out)
    if args.command == "selftest" and not body["passed"]:
        return 1
    return 0


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
