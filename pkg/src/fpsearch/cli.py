"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 when a closed form and its
simulation disagree.
"""
from __future__ import annotations

import argparse
import sys

from . import algorithms as alg
from . import analytics as an
from . import database as db
from . import experiments as ex
from .experiments import format_number as fmt


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpsearch", description="Two-ancilla fixed point quantum search simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(p):
        p.add_argument("--epsilon", type=float, required=True)
        p.add_argument("--r", type=float, default=0.5)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--avoided", action="store_true", help="make epsilon = 1 the fixed point")

    p = sub.add_parser("exact", help="exact outcome distribution")
    search_flags(p)
    p.add_argument("--deferred", action="store_true", help="use the measure-at-the-end circuit")

    p = sub.add_parser("sample", help="seeded Monte Carlo runs")
    search_flags(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--workers", type=int, default=1)

    for name, help_ in (("figure1", "error after one query"), ("figure4", "average queries")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--step", type=float, default=0.01)
        p.add_argument("--out", help="CSV path (default: standard output)")
        p.add_argument("--with-sim", action="store_true", help="also write the simulated columns")
        if name == "figure4":
            p.add_argument("--q", type=int, default=4)

    p = sub.add_parser("plan", help="iterations needed for an error threshold")
    p.add_argument("--eps-up", type=float, required=True)
    p.add_argument("--eps-th", type=float, required=True)

    p = sub.add_parser("crossover", help="break-even error against pick-and-test")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("scaling", help="iterations needed for error 1/e at small f")
    p.add_argument("--f-list", type=_float_list, required=True)

    sub.add_parser("verify", help="closed forms vs simulation, full grid")

    p = sub.add_parser("run", help="search an explicit N-item database")
    p.add_argument("--n", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--marked", type=_int_list, help="marked item indices")
    which.add_argument("--m", type=int, help="number of marked items, chosen with --seed")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--trials", type=int, help="sample this many runs instead of the exact distribution")
    return parser


def _print_distribution(dist: alg.OutcomeDistribution, out) -> None:
    print("exit_success=" + ",".join(fmt(p) for p in dist.exit_success), file=out)
    print(f"deterministic_success={fmt(dist.deterministic_success)}", file=out)
    print(f"final_success={fmt(dist.final_success)}", file=out)
    print(f"final_failure={fmt(dist.final_failure)}", file=out)
    print(f"expected_queries={fmt(dist.expected_queries)}", file=out)


def _print_records(records, out) -> None:
    n = len(records)
    failures = sum(not rec.success for rec in records)
    exits = sum(rec.exit_iteration is not None for rec in records)
    queries = sum(rec.queries_used for rec in records)
    print(f"trials={n}", file=out)
    print(f"success_rate={fmt(1 - failures / n)}", file=out)
    print(f"early_exit_rate={fmt(exits / n)}", file=out)
    print(f"mean_queries={fmt(queries / n)}", file=out)


def _emit_table(table: ex.SweepTable, path, out) -> None:
    if path:
        table.write_csv(path)
    else:
        out.write(table.to_csv())


def _config(args, variant=alg.Variant.STANDARD, seed=None) -> alg.SearchConfig:
    if args.avoided:
        variant = alg.Variant.AVOIDED_TARGET
    return alg.SearchConfig(args.epsilon, args.q, args.r, variant, seed)


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "exact":
        cfg = _config(args)
        if args.deferred:
            if args.q > alg.MAX_DEFERRED_Q:
                raise UsageError(f"--deferred supports q <= {alg.MAX_DEFERRED_Q}")
            dist = alg.run_deferred_measurement(cfg)
        else:
            dist = alg.run_fixed_point_exact(cfg)
        _print_distribution(dist, out)
    elif cmd == "sample":
        if args.trials < 1 or args.workers < 1:
            raise UsageError("--trials and --workers must be positive")
        cfg = _config(args, seed=args.seed)
        _print_records(alg.run_fixed_point_sampled(cfg, args.trials, args.workers), out)
    elif cmd == "figure1":
        _emit_table(ex.figure1_data(args.step, include_simulation=args.with_sim), args.out, out)
    elif cmd == "figure4":
        _emit_table(ex.figure4_data(args.step, args.q, include_simulation=args.with_sim), args.out, out)
    elif cmd == "plan":
        plan = an.plan_queries(args.eps_up, args.eps_th)
        print(f"q_an={plan.q_an} q_pi3={plan.q_pi3} q_cl={plan.q_cl}", file=out)
    elif cmd == "crossover":
        print(f"eps_a={an.crossover_epsilon_a(args.q)!r}", file=out)
    elif cmd == "scaling":
        print("f,q_needed,q_times_f", file=out)
        for f, q, qf in ex.scaling_scan(args.f_list):
            print(f"{fmt(f)},{q},{fmt(qf)}", file=out)
    elif cmd == "verify":
        residuals = ex.verification_matrix()
        for name, value in residuals.items():
            print(f"{name}={value:.3e}", file=out)
        worst = max(residuals.values())
        print(f"max_residual={worst:.3e}", file=out)
        if worst >= ex.MISMATCH_TOL:
            return 2
    elif cmd == "run":
        if args.marked is not None:
            spec = db.DatabaseSpec(args.n, tuple(args.marked))
        else:
            if args.seed is None:
                raise UsageError("--m needs --seed")
            spec = db.DatabaseSpec.random(args.n, args.m, args.seed)
        print("marked=" + ",".join(map(str, spec.marked)), file=out)
        if args.trials is None:
            _print_distribution(db.run_fixed_point_full(spec, args.q, args.r), out)
        else:
            if args.seed is None:
                raise UsageError("--trials needs --seed")
            records = db.run_fixed_point_full(spec, args.q, args.r, "sampled", args.seed, args.trials)
            _print_records(records, out)
    return 0


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return _run(args, out)
    except UsageError as err:
        print(err, file=sys.stderr)
        return 1
    except (ex.VerificationError, db.SubspaceError) as err:
        print(f"fpsearch: verification failed: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"fpsearch: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
