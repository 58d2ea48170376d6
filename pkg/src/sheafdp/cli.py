"""Command line interface.

Exit status: 0 on success, 1 when a domain check fails or a rule errors,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import engine, examples
from .errors import SheafError
from .rings import INTEGERS, PrimeField, RATIONALS, Reals
from .sheaf import check_sheaf_axioms
from .topology import (
    Base,
    check_minimal_extension_property,
    generate_topology,
    is_noetherian,
    validate_base,
)


class SpaceFileError(ValueError):
    pass


def parse_space(text: str) -> Base:
    """``points <n>`` followed by ``open <ids...>`` lines; ``#`` starts a comment."""
    count = None
    elements = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "points" and count is None and len(rest) == 1:
                count = int(rest[0])
                if count < 0:
                    raise ValueError
            elif head == "open" and count is not None:
                elements.append([int(tok) for tok in rest])
                if any(x < 0 for x in elements[-1]):
                    raise ValueError
            else:
                raise ValueError
        except ValueError:
            raise SpaceFileError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
    if count is None:
        raise SpaceFileError("missing 'points <n>' line")
    return Base(count, elements)


def format_space(t) -> str:
    lines = [f"points {t.point_count}"]
    lines += [" ".join(["open", *map(str, sorted(u))]) for u in t.opens]
    return "\n".join(lines) + "\n"


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SpaceFileError(str(exc)) from None


def _load_base(path) -> Base:
    return parse_space(_read(path))


def _number(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def cmd_topology(args, out) -> int:
    base = _load_base(args.file)
    violations = validate_base(base)
    if violations:
        for v in violations:
            print(v, file=out)
        return 1
    t = generate_topology(base)
    if args.action == "opens":
        out.write(format_space(t))
        return 0
    problems = check_minimal_extension_property(t)
    for v in problems:
        print(v, file=out)
    if not is_noetherian(t):
        print("noetherian: ascending chain condition fails", file=out)
        return 1
    if problems:
        return 1
    print(f"OK: {len(t)} opens", file=out)
    return 0


def _ring_for(args):
    return Reals() if getattr(args, "real", False) else RATIONALS


def _scoring(args, a, b):
    ring = _ring_for(args)
    return examples.AlignmentScoring(a, b, ring.coerce(args.match), ring.coerce(args.mismatch), ring.coerce(args.gap)), ring


def _build(args):
    """Topology and rule for ``compute``."""
    if args.space:
        t = generate_topology(_load_base(args.space))
    elif args.builtin == "chain":
        t = examples.chain_space(args.n)
    elif args.builtin == "quadric":
        t, _ = examples.quadric_space(args.p)
    elif args.builtin == "staircase":
        t = None
    else:
        raise SpaceFileError("one of --space or --builtin is required")

    if args.rule == "zero":
        if t is None:
            t = examples.staircase_space(args.m, args.n)
        return t, engine.constant_rule(0)
    if args.rule == "chain":
        if t is None:
            t = examples.staircase_space(args.m, args.n)
        return t, examples.chain_rule()
    if args.rule == "quadric":
        if args.builtin != "quadric":
            raise SpaceFileError("--rule quadric needs --builtin quadric")
        t, points = examples.quadric_space(args.p)
        f = examples.parse_field_map(args.f, args.p)
        return t, examples.quadric_rule(points, args.p, f, args.default)
    # nw
    if args.builtin != "staircase":
        raise SpaceFileError("--rule nw needs --builtin staircase")
    if args.cost_table:
        cost = examples.parse_cost_table(_read(args.cost_table))
        rule = examples.nw_rule(cost)
        rule = engine.ExtensionRule(rule.fn, rule.context, rule.name, RATIONALS)
        m, n = cost.m, cost.n
    else:
        if args.seq_a is None or args.seq_b is None:
            raise SpaceFileError("--rule nw needs --seq-a/--seq-b or --cost-table")
        scoring, ring = _scoring(args, args.seq_a, args.seq_b)
        rule = examples.nw_rule_scored(scoring)
        rule = engine.ExtensionRule(rule.fn, rule.context, rule.name, ring)
        m, n = scoring.m, scoring.n
    return examples.staircase_space(m, n), rule


def cmd_compute(args, out) -> int:
    t, rule = _build(args)
    try:
        trace = engine.run(t, rule, verify=True)
    except SheafError as exc:
        print(f"error: {exc}", file=out)
        return 1
    if args.result_only:
        print(engine.format_result(trace.result, trace.ring.format), file=out)
    else:
        out.write(trace.format())
    return 0


def cmd_align(args, out) -> int:
    seqs = args.sequences
    if args.cost_table:
        cost = examples.parse_cost_table(_read(args.cost_table))
        t = examples.staircase_space(cost.m, cost.n)
        rule = examples.nw_rule(cost)
        ring, m, n, scoring = RATIONALS, cost.m, cost.n, None
    else:
        if len(seqs) != 2:
            print("align: two sequences are required", file=sys.stderr)
            return 2
        scoring, ring = _scoring(args, *seqs)
        m, n = scoring.m, scoring.n
        t = examples.staircase_space(m, n)
        rule = examples.nw_rule_scored(scoring)
    trace = engine.run(t, rule)
    table = examples.grid_table(trace.result, m, n)
    for row in table:
        print(" ".join(ring.format(v) for v in row), file=out)
    print(f"score: {ring.format(table[m][n])}", file=out)
    if args.traceback:
        if scoring is None:
            print("traceback needs scored alignment (no --cost-table)", file=out)
            return 1
        top, bottom = examples.traceback(table, scoring)
        print(top, file=out)
        print(bottom, file=out)
    return 0


def cmd_verify(args, out) -> int:
    base = _load_base(args.file)
    violations = validate_base(base)
    if violations:
        for v in violations:
            print(f"FAIL base: {v}", file=out)
        return 1
    t = generate_topology(base)
    rng = random.Random(args.seed)
    checks = [
        ("sheaf-axioms[F2]", check_sheaf_axioms(t, PrimeField(2), rng, args.samples)),
        ("sheaf-axioms[int]", check_sheaf_axioms(t, INTEGERS, rng, args.samples)),
        ("minimal-extension", check_minimal_extension_property(t)),
        ("well-defined[zero]", engine.verify_well_definedness(t, engine.constant_rule(0))),
        ("noetherian", [] if is_noetherian(t) else ["ascending chain condition fails"]),
    ]
    status = 0
    for name, found in checks:
        if found:
            status = 1
            print(f"FAIL {name}: {found[0]}", file=out)
        else:
            print(f"ok {name}", file=out)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sheafdp", description="Dynamic programming as sheaf computation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("topology", help="validate a base or list its opens")
    p.add_argument("action", choices=["check", "opens"])
    p.add_argument("file")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("compute", help="run a sheaf computation and print its trace")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--space", help="space file")
    src.add_argument("--builtin", choices=["chain", "staircase", "quadric"])
    p.add_argument("--rule", choices=["chain", "nw", "quadric", "zero"], required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--f", default="identity", help="identity, power:K or table:v0,v1,...")
    p.add_argument("--default", type=int, default=1)
    p.add_argument("--seq-a")
    p.add_argument("--seq-b")
    p.add_argument("--cost-table")
    _scoring_flags(p)
    p.add_argument("--result-only", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("align", help="global alignment on the staircase topology")
    p.add_argument("sequences", nargs="*")
    p.add_argument("--cost-table", help="per-cell costs for the source-cost recurrence")
    _scoring_flags(p)
    p.add_argument("--traceback", action="store_true")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("verify", help="run the sheaf-axiom and well-definedness checks on a space file")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def _scoring_flags(p):
    p.add_argument("--match", type=_number, default=Fraction(0))
    p.add_argument("--mismatch", type=_number, default=Fraction(1))
    p.add_argument("--gap", type=_number, default=Fraction(1))
    p.add_argument("--real", action="store_true", help="use floating point scores")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (SpaceFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SheafError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
