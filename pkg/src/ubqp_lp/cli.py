"""Command-line entry point: ``ubqp-lp {gen,reduce,solve,oracle,verify,selftest}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .campaign import CampaignAbort, CampaignConfig, run_campaign
from .instance import DOMAINS, INTEGER, InstanceError, random_instance, read_instance, write_instance
from .lpsolve import BLAND, DANTZIG, DimensionError, LpProblem, SolveOptions, solve, write_solution
from .numeric import EXACT, MODES, NumericError, format_rational, parse_rational
from .oracle import DEFAULT_CAP, OracleCapError, brute_force_min
from .reduction import assemble, read_lp, write_lp
from .selftest import run_selftest

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2

log = logging.getLogger("ubqp_lp")


def _number(text: str):
    """Accept ``p``, ``p/q`` or a decimal like ``1e-6`` (converted exactly)."""
    try:
        return parse_rational(text)
    except NumericError:
        pass
    from fractions import Fraction

    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _emit(data: dict, out) -> None:
    text = json.dumps(data, indent=1) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_gen(a) -> int:
    inst = random_instance(a.n, a.lo, a.hi, a.domain, a.seed)
    if a.out:
        write_instance(inst, a.out)
    else:
        from .instance import instance_to_dict

        _emit(instance_to_dict(inst), None)
    return EXIT_OK


def cmd_reduce(a) -> int:
    lp = assemble(read_instance(a.instance))
    if a.out:
        write_lp(lp, a.out)
    else:
        from .reduction import lp_to_dict

        _emit(lp_to_dict(lp), None)
    return EXIT_OK


def cmd_solve(a) -> int:
    A, rhs, cost, _names = read_lp(a.lp)
    sol = solve(LpProblem(A, tuple(rhs), tuple(cost)), SolveOptions(mode=a.mode, pivot=a.pivot))
    if a.out:
        write_solution(sol, a.out)
    else:
        _emit(sol.to_dict(), None)
    return EXIT_OK


def cmd_oracle(a) -> int:
    value, argmins = brute_force_min(read_instance(a.instance), a.cap)
    _emit({"min": format_rational(value), "argmins": ["".join(map(str, x)) for x in argmins]}, a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    n_min = a.n if a.n is not None else a.n_min
    n_max = a.n if a.n is not None else a.n_max
    cfg = CampaignConfig(
        n_min=n_min,
        n_max=n_max,
        count_per_n=a.count,
        lo=a.lo,
        hi=a.hi,
        domain=a.domain,
        epsilon=a.epsilon,
        seed=a.seed,
        mode=a.mode,
        pivot=a.pivot,
        oracle_cap=a.cap,
    )
    out = Path(a.out or "campaign")
    out.mkdir(parents=True, exist_ok=True)
    cx_dir = Path(a.counterexample_dir) if a.counterexample_dir else out / "counterexamples"
    report = run_campaign(cfg, cx_dir)
    report.write_csv(out / "report.csv")
    report.write_json(out / "report.json")
    for n, rate in report.match_rate().items():
        print(f"n={n}: match rate {rate:.4f}")
    print(f"{len(report.records)} instances, {len(report.counterexamples)} counterexamples; report in {out}")
    return EXIT_OK if report.all_matched else EXIT_MISMATCH


def cmd_selftest(a) -> int:
    return EXIT_OK if run_selftest() else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ubqp-lp", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mode=False, cap=False, out_help="output file (default: stdout)"):
        sp.add_argument("--out", help=out_help)
        if mode:
            sp.add_argument("--mode", choices=MODES, default=EXACT)
            sp.add_argument("--pivot", choices=(BLAND, DANTZIG), default=DANTZIG)
        if cap:
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest n the brute force accepts")

    def instance_flags(sp):
        sp.add_argument("--lo", type=_number, default=-50)
        sp.add_argument("--hi", type=_number, default=50)
        sp.add_argument("--domain", choices=DOMAINS, default=INTEGER)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("gen", help="write a random instance")
    sp.add_argument("--n", type=int, required=True)
    instance_flags(sp)
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("reduce", help="instance JSON -> LP JSON")
    sp.add_argument("instance")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="LP JSON -> solution JSON")
    sp.add_argument("lp")
    common(sp, mode=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="brute-force minimum and all minimisers")
    sp.add_argument("instance")
    common(sp, cap=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="seeded LP versus brute-force campaign")
    sp.add_argument("--n", type=int, help="shorthand for --n-min N --n-max N")
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--epsilon", type=_number, default=_number("1/1000000"))
    sp.add_argument("--counterexample-dir")
    instance_flags(sp)
    sp.set_defaults(seed=42)
    common(sp, mode=True, cap=True, out_help="report directory (default: ./campaign)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("selftest", help="check the published worked examples")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InstanceError, DimensionError, OracleCapError, NumericError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CampaignAbort as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
