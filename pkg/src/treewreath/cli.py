"""Command-line front end.

Exit codes: 0 success (or membership true), 1 membership false or a failed
verification suite, 2 parse/usage error, 3 precondition violation, 4 cap
exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .commutators import (
    NotInDerivedSubgroup,
    decompose_Bk_with_Gk_witness,
    decompose_derived_wreath,
    decompose_Gk,
)
from .core import (
    ParseError,
    WreathSignature,
    as_rng,
    commutator,
    conjugate,
    inverse,
    multiply,
    parse,
    render,
)
from .membership import SubgroupKind, SubgroupSpec, is_member, random_member, subgroup_order
from .oracle import DEFAULT_CAP, CapExceeded, enumerate_group
from .suites import SUITES, report_passed, run_suite

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3, 4

SET_CHOICES = [k.value for k in SubgroupKind]


class UsageError(Exception):
    pass


def _common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # registered on the main parser and on every subcommand, so flags work in either position
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--signature", default=d(None), help="arities p1,p2,...,pk")
    parser.add_argument("--arity", type=int, default=d(None))
    parser.add_argument("--depth", type=int, default=d(None))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--samples", type=int, default=d(None))
    parser.add_argument("--max-depth", type=int, default=d(None))
    parser.add_argument("--cap", type=int, default=d(DEFAULT_CAP))
    parser.add_argument("--json", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treewreath",
        description="Arithmetic, membership and commutator decompositions in "
                    "iterated wreath products of cyclic groups.")
    _common_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, nargs=0, with_set=False, set_default="full"):
        p = sub.add_parser(name, help=help_)
        _common_options(p, suppress=True)
        if nargs:
            p.add_argument("elements", nargs=nargs, metavar="PORTRAIT")
        if with_set:
            p.add_argument("--set", dest="set", choices=SET_CHOICES, default=set_default)
        return p

    add("mul", "product g*h (apply g, then h)", 2)
    add("inv", "inverse", 1)
    add("comm", "commutator [a,b] = a b a^-1 b^-1", 2)
    add("conj", "conjugate a^b = b a b^-1", 2)
    add("member", "membership test; exit 0 if true, 1 if false", 1, True, "derived")
    add("decompose", "write an element as one commutator", 1, True, "derived")
    add("enumerate", "list all elements of a subgroup", 0, True)
    add("random", "draw uniform elements of a subgroup", 0, True)
    add("order", "subgroup order", 0, True)
    p = add("verify", "run a named verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    return parser


def _signature(args) -> WreathSignature:
    has_sig = args.signature is not None
    has_uniform = args.arity is not None or args.depth is not None
    if has_sig == has_uniform:
        raise UsageError("give exactly one of --signature or --arity/--depth")
    try:
        if has_sig:
            return WreathSignature(int(x) for x in args.signature.split(","))
        if args.arity is None or args.depth is None:
            raise UsageError("--arity and --depth must be given together")
        return WreathSignature.uniform(args.arity, args.depth)
    except ValueError as exc:
        raise UsageError(f"bad signature: {exc}") from None


def _spec(kind: SubgroupKind, sig: WreathSignature) -> SubgroupSpec:
    try:
        return SubgroupSpec(kind, sig)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(out, args, key: str, value) -> None:
    if args.json:
        out.write(json.dumps({key: value}) + "\n")
    elif isinstance(value, bool):
        out.write(("true" if value else "false") + "\n")
    else:
        out.write(f"{value}\n")


def _decompose(w, kind: SubgroupKind):
    if kind is SubgroupKind.SYLOW_A_DERIVED:
        return decompose_Gk(w)
    if kind in (SubgroupKind.DERIVED, SubgroupKind.FULL):
        if w.signature.is_binary:
            return decompose_Bk_with_Gk_witness(w)
        return decompose_derived_wreath(w)
    raise UsageError("decompose accepts --set derived, full or sylow-a-derived")


def _run(args, out) -> int:
    sig = _signature(args)
    elems = [parse(sig, t) for t in getattr(args, "elements", [])]
    cmd = args.command
    binary_op = {"mul": multiply, "comm": commutator, "conj": conjugate}
    if cmd in binary_op:
        _emit(out, args, "result", render(binary_op[cmd](*elems)))
        return EXIT_OK
    if cmd == "inv":
        _emit(out, args, "result", render(inverse(elems[0])))
        return EXIT_OK

    kind = SubgroupKind(getattr(args, "set", "full"))
    if cmd == "member":
        spec = _spec(kind, sig)
        if spec.kind is SubgroupKind.SYLOW_A_DERIVED and sig.depth < 2:
            raise UsageError("sylow-a-derived membership needs depth >= 2")
        result = is_member(elems[0], spec.kind)
        _emit(out, args, "member", result)
        return EXIT_OK if result else EXIT_FALSE
    if cmd == "decompose":
        _spec(kind, sig)
        if kind is SubgroupKind.SYLOW_A_DERIVED and sig.depth < 2:
            raise UsageError("sylow-a-derived decomposition needs depth >= 2")
        witness = _decompose(elems[0], kind)
        out.write(json.dumps(witness.to_dict()) + "\n")
        return EXIT_OK
    if cmd == "order":
        _emit(out, args, "order", subgroup_order(_spec(kind, sig)))
        return EXIT_OK
    if cmd == "enumerate":
        group = enumerate_group(_spec(kind, sig), args.cap)
        if args.json:
            out.write(json.dumps(group.renders()) + "\n")
        else:
            out.write("".join(s + "\n" for s in group.renders()))
        return EXIT_OK
    if cmd == "random":
        spec = _spec(kind, sig)
        rng = as_rng(args.seed)
        draws = [render(random_member(spec, rng)) for _ in range(args.samples or 1)]
        if args.json:
            out.write(json.dumps(draws) + "\n")
        else:
            out.write("".join(s + "\n" for s in draws))
        return EXIT_OK
    if cmd == "verify":
        samples = 100 if args.samples is None else args.samples
        report = run_suite(args.suite, sig, samples=samples, max_depth=args.max_depth,
                           seed=args.seed, cap=args.cap)
        out.write(json.dumps(report, indent=2) + "\n")
        return EXIT_OK if report_passed(report) else EXIT_FALSE
    raise UsageError(f"unknown command {cmd}")


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (NotInDerivedSubgroup, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
