"""Batch command line front end emitting deterministic, machine-readable reports."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import codec, martingale, nulltests, oracle, param, strategies

Result = tuple[str, str]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_INPUT = 2


def fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _show(sigma: str) -> str:
    return sigma if sigma else "-"


def _strategy_martingale(args) -> martingale.Martingale:
    if args.strategy == "coincidence":
        if args.ref is None:
            raise ValueError("--strategy coincidence requires --ref")
        return strategies.coincidence_martingale(args.ref)
    if args.strategy == "pair-doubling":
        if args.depth is None:
            raise ValueError("--strategy pair-doubling requires --depth")
        return strategies.pair_doubling_martingale(args.depth)
    raise ValueError(f"unknown strategy {args.strategy!r}")


def _input_martingale(args) -> martingale.Martingale:
    if args.table is not None and args.strategy is not None:
        raise ValueError("give either a table file or --strategy, not both")
    if args.table is not None:
        return martingale.load_table(args.table)
    if args.strategy is not None:
        return _strategy_martingale(args)
    raise ValueError("give a table file or --strategy")


def _functional(args) -> oracle.TTFunctional:
    if args.kernel == "prefix-coincidence":
        return oracle.prefix_coincidence_functional(args.prefix_length)
    return oracle.BUILTIN_KERNELS[args.kernel]()


def cmd_codec(args) -> tuple[list[Result], list[str]]:
    results: list[Result] = []
    if args.num is not None:
        sigma = "" if args.num == "-" else args.num
        results.append((f"num({_show(sigma)})", fmt(codec.num_of(sigma))))
    if args.str is not None:
        results.append((f"str({args.str})", _show(codec.str_of(args.str))))
    if args.pair is not None:
        a, b = args.pair
        results.append((f"pair({a},{b})", fmt(codec.pair(a, b))))
    if args.s is not None:
        e, n = args.s
        results.append((f"s({e},{n})", fmt(codec.s_index(e, n))))
    if args.interval is not None:
        family = codec.Family(args.interval[0])
        m = int(args.interval[1])
        iv = codec.interval(family, m)
        results.append((f"interval({family.value},{m})", f"{iv.lo}..{iv.hi}"))
    if args.parity is not None:
        results.append((f"parity({args.parity})", fmt(codec.parity(args.parity))))
    if not results:
        raise ValueError("nothing to compute; pass one of the codec options")
    return results, []


def cmd_budget(args) -> tuple[list[Result], list[str]]:
    budget = codec.budget_sequence(args.k)
    results = [(f"r_{i}", fmt(r)) for i, r in enumerate(budget.terms)]
    results.append(("weighted_partial_sum", fmt(budget.weighted_partial_sum())))
    results.append(("remainder", fmt(budget.remainder)))
    return results, []


def cmd_validate(args) -> tuple[list[Result], list[str]]:
    m = martingale.load_table(args.table)
    depth = m.depth if args.depth is None else args.depth
    violations = martingale.validate(m, depth)
    return [("depth", str(depth)), ("valid", fmt(not violations))], violations


def cmd_trace(args) -> tuple[list[Result], list[str]]:
    m = _input_martingale(args)
    path = "" if args.path == "-" else args.path
    trace = martingale.capital_trace(m, path)
    return [
        (f"M({_show(path[:i])})", fmt(v)) for i, v in enumerate(trace)
    ], []


def cmd_adversary(args) -> tuple[list[Result], list[str]]:
    m = _input_martingale(args)
    length = m.depth if args.length is None else args.length
    path = strategies.adversary_sequence(m, length)
    trace = martingale.capital_trace(m, path)
    results: list[Result] = [("adversary", _show(path))]
    results += [(f"M({_show(path[:i])})", fmt(v)) for i, v in enumerate(trace)]
    violations = [
        f"capital increased at step {i}: {a} -> {b}"
        for i, (a, b) in enumerate(zip(trace, trace[1:]))
        if b > a
    ]
    return results, violations


def cmd_average(args) -> tuple[list[Result], list[str]]:
    f = _functional(args)
    n = oracle.averaged_martingale(f, args.depth, guard=args.guard)
    results: list[Result] = [("kernel", f.name)]
    results += [
        (f"N({_show(sigma)})", fmt(n.value(sigma)))
        for sigma in martingale.strings_up_to(args.depth)
    ]
    violations = martingale.validate(n, args.depth)
    return results, violations


def cmd_exceed(args) -> tuple[list[Result], list[str]]:
    f = _functional(args)
    if args.path is not None:
        path = "" if args.path == "-" else args.path
    else:
        n_avg = oracle.averaged_martingale(f, args.depth, guard=args.guard)
        path = strategies.adversary_sequence(n_avg, args.depth)
    exceed = oracle.exceed_set(f, path, args.n, guard=args.guard)
    bound = Fraction(1, 2 ** (args.n - 1)) if args.n >= 1 else Fraction(2)
    results: list[Result] = [
        ("kernel", f.name),
        ("path", _show(path)),
        ("level", str(args.n)),
        ("measure", fmt(exceed.measure)),
        ("bound", fmt(bound)),
    ]
    results += [
        (f"member_{i}", _show(g))
        for i, g in enumerate(exceed.members.sorted_generators())
    ]
    violations = []
    if exceed.measure > bound:
        violations.append(
            f"exceed-set measure {exceed.measure} above bound {bound}"
        )
    return results, violations


def cmd_measure(args) -> tuple[list[Result], list[str]]:
    c = nulltests.load_clopen(args.file)
    results: list[Result] = [("measure", fmt(c.measure()))]
    results += [
        (f"generator_{i}", _show(g)) for i, g in enumerate(c.sorted_generators())
    ]
    return results, []


def cmd_engulf(args) -> tuple[list[Result], list[str]]:
    rows = [nulltests.load_kurtz(p) for p in args.rows]
    i_max = len(rows) - 1 if args.i_max is None else args.i_max
    f_j, bound = nulltests.engulf_transform(rows, args.j, i_max)
    mu = f_j.measure()
    results: list[Result] = [
        ("measure", fmt(mu)),
        ("bound", fmt(bound)),
    ]
    results += [
        (f"generator_{i}", _show(g)) for i, g in enumerate(f_j.sorted_generators())
    ]
    violations = []
    if mu > bound:
        violations.append(f"engulfed measure {mu} above bound {bound}")
    return results, violations


def cmd_dnr_cover(args) -> tuple[list[Result], list[str]]:
    partials = nulltests.dnr_cover_product(args.e, args.n)
    results: list[Result] = [
        ("P_0", fmt(partials[0])),
        (f"P_{args.n}", fmt(partials[-1])),
    ]
    if args.n >= args.e + 2:
        results.append(
            (f"divergence_partial_{args.n}", fmt(nulltests.divergence_partial(args.e, args.n)))
        )
    violations = [
        f"partial product not strictly decreasing at n={i + 1}"
        for i, (a, b) in enumerate(zip(partials, partials[1:]))
        if b >= a
    ]
    return results, violations


def cmd_param(args) -> tuple[list[Result], list[str]]:
    p = param.load_parametrization(args.file)
    if args.halve:
        p = param.halve_transform(p)
    results: list[Result] = [("depth", str(p.depth))]
    if args.halve:
        results += [
            (f"row_{i}", "".join(map(str, row))) for i, row in enumerate(p.rows)
        ]
    if args.target is not None:
        report = param.io_match_report(p, args.target)
        results += [
            (f"row_{i}", f"consistent={fmt(ok)} hits={h}")
            for i, (ok, h) in enumerate(report)
        ]
    return results, []


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recmeasure",
        description="Exact-arithmetic martingales and effective null tests.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("codec", help="string/number codec and pairing")
    p.add_argument("--num", metavar="BITS", help="rank of a string ('-' for the empty string)")
    p.add_argument("--str", type=int, metavar="N", help="string of a rank")
    p.add_argument("--pair", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--s", nargs=2, type=int, metavar=("E", "N"))
    p.add_argument("--interval", nargs=2, metavar=("FAMILY", "M"),
                   help="FAMILY in {logpart,pow2,pow3}")
    p.add_argument("--parity", type=int, metavar="X")
    p.set_defaults(handler=cmd_codec)

    p = sub.add_parser("budget", help="dyadic budget sequence")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_budget)

    p = sub.add_parser("validate", help="validate a martingale table file")
    p.add_argument("table")
    p.add_argument("--depth", type=int)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("trace", help="capital trace along a path")
    p.add_argument("table", nargs="?")
    p.add_argument("--strategy", choices=["coincidence", "pair-doubling"])
    p.add_argument("--ref", help="reference word for the coincidence strategy")
    p.add_argument("--depth", type=int, help="depth for the pair-doubling strategy")
    p.add_argument("--path", required=True, help="path to trace ('-' for the empty path)")
    p.set_defaults(handler=cmd_trace)

    p = sub.add_parser("adversary", help="greedy nonincreasing path")
    p.add_argument("table", nargs="?")
    p.add_argument("--strategy", choices=["coincidence", "pair-doubling"])
    p.add_argument("--ref")
    p.add_argument("--depth", type=int)
    p.add_argument("--length", type=int)
    p.set_defaults(handler=cmd_adversary)

    def add_kernel_options(p):
        p.add_argument("--kernel", required=True, choices=sorted(oracle.BUILTIN_KERNELS))
        p.add_argument("--prefix-length", type=int, default=1,
                       help="prefix length for the prefix-coincidence kernel")
        p.add_argument("--depth", type=int, required=True)
        p.add_argument("--guard", type=int, default=oracle.DEFAULT_GUARD,
                       help="cap on the oracle enumeration length")

    p = sub.add_parser("average", help="oracle-averaged martingale table")
    add_kernel_options(p)
    p.set_defaults(handler=cmd_average)

    p = sub.add_parser("exceed", help="exceed set of an oracle family")
    add_kernel_options(p)
    p.add_argument("--n", type=int, required=True, help="capital level 2^n + 1")
    p.add_argument("--path", help="path to watch (default: adversary of the average)")
    p.set_defaults(handler=cmd_exceed)

    p = sub.add_parser("measure", help="measure of a clopen set file")
    p.add_argument("file")
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser("engulf", help="diagonal union of Kurtz test rows")
    p.add_argument("rows", nargs="+", help="Kurtz test files, one per row")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--i-max", type=int)
    p.set_defaults(handler=cmd_engulf)

    p = sub.add_parser("dnr-cover", help="avoidance cover partial products")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="number of factors minus one")
    p.set_defaults(handler=cmd_dnr_cover)

    p = sub.add_parser("param", help="prediction table reports")
    p.add_argument("file")
    p.add_argument("--target", help="target word to compare the rows against")
    p.add_argument("--halve", action="store_true", help="apply the halve transform first")
    p.set_defaults(handler=cmd_param)

    return parser


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"{label}: {value}" for label, value in report["results"]]
    lines += [f"violation: {v}" for v in report["violations"]]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("handler", "json") and v is not None
    }
    try:
        results, violations = args.handler(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    report = {
        "command": args.command,
        "inputs": {k: str(v) for k, v in inputs.items()},
        "results": results,
        "violations": violations,
    }
    sys.stdout.write(render(report, args.json))
    return EXIT_VIOLATION if violations else EXIT_OK


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
