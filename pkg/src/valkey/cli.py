"""Command-line front end: parse descriptors and polynomials, emit JSON.

Every invocation writes exactly one JSON document to standard output with a
top-level ``schemaVersion`` field.  Exit status: 0 on success or a passing
check, 1 when a check suite fails, 2 on usage or parse errors, 3 when a
family prefix is too short to stabilize a value.  The VALKEY_OUTPUT
environment variable overrides --output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .family import (
    NotStabilizedError,
    classify,
    limit_check,
    stabilize,
)
from .ground import TAdicRationalFunctions, Rationals, Value
from .graded import initial_form, inQprime_divides, equivalent, y_divides
from .harness import SUITES, Sampler, exhaustive_elements
from .keypoly import abstract_key_check, alpha, compare_keys, epsilon, psi_member
from .poly import enumerate_polys, parse_poly, q_expansion
from .serialize import descriptor_from_json, prefix_from_json
from .valuation import MacLaneChain

SCHEMA_VERSION = "1"


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(doc: dict, mode: str) -> None:
    doc = {"schemaVersion": SCHEMA_VERSION, **doc}
    if mode == "pretty":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _descriptor(args):
    return descriptor_from_json(_load_json(args.descriptor))


def _chain(args) -> MacLaneChain:
    return MacLaneChain(_descriptor(args))


def _sampler(args) -> Sampler:
    return Sampler(
        degree_bound=args.degree,
        height_bound=args.height,
        trials=args.trials,
        seed=args.seed,
    )


def _polys(args, cfg, want: int):
    texts = args.poly or []
    if len(texts) != want:
        raise ValueError(f"expected {want} polynomial argument(s), got {len(texts)}")
    return [parse_poly(cfg, t) for t in texts]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valkey",
        description="exact computations with valuations on K[x]",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, descriptor=True):
        if descriptor:
            p.add_argument("-d", "--descriptor", required=True, help="descriptor JSON file")
        p.add_argument("--output", choices=("json", "pretty"), default="json")

    p = sub.add_parser("eval", help="evaluate a valuation on a polynomial")
    common(p)
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("expand", help="expansion of a polynomial in powers of a base")
    p.add_argument("-d", "--descriptor", help="descriptor JSON file (sets the ground field)")
    p.add_argument("--output", choices=("json", "pretty"), default="json")
    p.add_argument("-q", "--base", required=True)
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("epsilon", help="the epsilon invariant of a polynomial")
    common(p)
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("alpha", help="least degree dropping under the step truncation")
    common(p)
    p.add_argument("--step", type=int, required=True)

    p = sub.add_parser("psi", help="membership of the drop set at a chain step")
    common(p)
    p.add_argument("--step", type=int, required=True)
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("check-key", help="abstract key check for a chain step")
    common(p)
    p.add_argument("--step", type=int, required=True)

    p = sub.add_parser("compare-keys", help="degree/epsilon/truncation comparison of two keys")
    common(p)
    p.add_argument("-f", "--poly", action="append", required=True, help="give twice: Q and Q'")

    p = sub.add_parser("initial-form", help="initial form in the graded algebra of a truncation")
    common(p)
    p.add_argument("-q", "--base", required=True, help="the truncation key")
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("equivalent", help="equality of initial forms under a valuation")
    common(p)
    p.add_argument("-f", "--poly", action="append", required=True, help="give twice: f and g")

    p = sub.add_parser("divides", help="divisibility of initial forms")
    common(p)
    p.add_argument("-q", "--base", help="truncation key (for divisibility by the key's form)")
    p.add_argument("--step", type=int, help="chain step (with --psi)")
    p.add_argument("--psi", help="a Psi-member whose form divides")
    p.add_argument("-f", "--poly", action="append", required=True)

    p = sub.add_parser("family", help="family prefix operations")
    fam = p.add_subparsers(dest="family_command", required=True)
    for name in ("stabilize", "classify"):
        fp = fam.add_parser(name)
        fp.add_argument("-d", "--descriptor", required=True, help="prefix JSON file")
        fp.add_argument("--output", choices=("json", "pretty"), default="json")
        fp.add_argument("-f", "--poly", action="append", required=True)
    fp = fam.add_parser("limit-check")
    fp.add_argument("-d", "--descriptor", required=True, help="prefix JSON file")
    fp.add_argument("--output", choices=("json", "pretty"), default="json")
    fp.add_argument("-q", "--base", required=True, help="limit key candidate")
    fp.add_argument("--gamma", required=True)
    fp.add_argument("--degree", type=int, default=2, help="sample degree for minimality evidence")
    fp.add_argument("--height", type=int, default=2, help="sample height for minimality evidence")

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    common(p)
    p.add_argument("--step", type=int, default=0)
    p.add_argument("-q", "--base", help="expansion base (extension) or key (mlv-key)")
    p.add_argument("--gamma", help="assigned value (extension)")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("version", help="tool name and version")
    p.add_argument("--output", choices=("json", "pretty"), default="json")

    return parser


def _dispatch(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "version":
        return {"name": "valkey", "version": __version__}, 0

    if cmd == "eval":
        v = _descriptor(args)
        (f,) = _polys(args, v.ground, 1)
        return {"value": str(v(f))}, 0

    if cmd == "expand":
        if args.descriptor:
            cfg = descriptor_from_json(_load_json(args.descriptor)).ground
        else:
            cfg = TAdicRationalFunctions(Rationals())
        q = parse_poly(cfg, args.base)
        (f,) = _polys(args, cfg, 1)
        expansion = q_expansion(f, q)
        return {
            "base": q.text(),
            "parts": [part.text() for part in expansion.parts],
        }, 0

    if cmd == "epsilon":
        v = _descriptor(args)
        (f,) = _polys(args, v.ground, 1)
        return epsilon(v, f).to_json_dict(), 0

    if cmd == "alpha":
        chain = _chain(args)
        return {"alpha": str(alpha(chain, args.step))}, 0

    if cmd == "psi":
        chain = _chain(args)
        (f,) = _polys(args, chain.ground, 1)
        return {"member": psi_member(chain, args.step, f)}, 0

    if cmd == "check-key":
        chain = _chain(args)
        return abstract_key_check(chain, args.step).to_json_dict(), 0

    if cmd == "compare-keys":
        v = _descriptor(args)
        Q, Qp = _polys(args, v.ground, 2)
        return compare_keys(v, Q, Qp).to_json_dict(), 0

    if cmd == "initial-form":
        v = _descriptor(args)
        Q = parse_poly(v.ground, args.base)
        (f,) = _polys(args, v.ground, 1)
        return initial_form(v, Q, f).to_json_dict(), 0

    if cmd == "equivalent":
        v = _descriptor(args)
        f, g = _polys(args, v.ground, 2)
        return {"equivalent": equivalent(v, f, g)}, 0

    if cmd == "divides":
        if args.psi is not None:
            if args.step is None:
                raise ValueError("--psi requires --step")
            chain = _chain(args)
            Qp = parse_poly(chain.ground, args.psi)
            (f,) = _polys(args, chain.ground, 1)
            return {"divides": inQprime_divides(chain, args.step, Qp, f)}, 0
        if args.base is None:
            raise ValueError("divides needs either -q or --psi")
        v = _descriptor(args)
        Q = parse_poly(v.ground, args.base)
        (f,) = _polys(args, v.ground, 1)
        return {"divides": y_divides(v, Q, f)}, 0

    if cmd == "family":
        prefix = prefix_from_json(_load_json(args.descriptor))
        cfg = prefix.base.ground
        sub = args.family_command
        if sub == "stabilize":
            (f,) = _polys(args, cfg, 1)
            return stabilize(prefix, f).to_json_dict(), 0
        if sub == "classify":
            (f,) = _polys(args, cfg, 1)
            return classify(prefix, f).to_json_dict(), 0
        if sub == "limit-check":
            Q = parse_poly(cfg, args.base)
            gamma = Value.parse(args.gamma)
            samples = enumerate_polys(
                cfg,
                exhaustive_elements(cfg, args.height),
                min(args.degree, max(Q.degree - 1, 0)),
            )
            return limit_check(prefix, Q, gamma, samples).to_json_dict(), 0
        raise ValueError(f"unknown family command {sub!r}")

    if cmd == "check":
        v = _descriptor(args)
        s = _sampler(args)
        suite = args.suite
        if suite == "extension":
            if not args.base or args.gamma is None:
                raise ValueError("the extension suite needs -q and --gamma")
            q = parse_poly(v.ground, args.base)
            report = SUITES[suite](v, q, Value.parse(args.gamma), s)
        elif suite in ("key-bounds", "graded"):
            report = SUITES[suite](MacLaneChain(v), args.step, s)
        elif suite == "complete-set":
            report = SUITES[suite](MacLaneChain(v), s)
        elif suite == "mlv-key":
            if not args.base:
                raise ValueError("mlv-key needs -q")
            report = SUITES[suite](v, parse_poly(v.ground, args.base), s)
        else:
            report = SUITES[suite](v, s)
        return report.to_json_dict(), 0 if report.passed else 1

    raise ValueError(f"unknown command {cmd!r}")


def run(argv: list[str]) -> int:
    """Execute one CLI request; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    mode = os.environ.get("VALKEY_OUTPUT") or args.output
    if mode not in ("json", "pretty"):
        mode = "json"
    try:
        doc, status = _dispatch(args)
    except NotStabilizedError as exc:
        _emit({"error": {"kind": "not-stabilized", "message": str(exc)}}, mode)
        return 3
    except (ValueError, TypeError, ZeroDivisionError, KeyError, IndexError) as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}}, mode)
        return 2
    except OSError as exc:
        _emit({"error": {"kind": "io", "message": str(exc)}}, mode)
        return 2
    _emit(doc, mode)
    return status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
