"""Command-line entry point.

Exit codes: 0 success (whatever the classification), 2 malformed input or
bad arguments, 3 enumeration guard exceeded, 4 checkpoint mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds
from .census import C9, T9, CheckpointError, census
from .coxeter import CoxeterFormatError, read_coxeter
from .density import DensityError, DensitySchedule
from .general import ENUMERATION_GUARD, GuardError, classify_coxeter
from .graph import GraphFormatError, read_graph
from .racg import classify_racg
from .random_lab import SweepConfig, run_sweep

EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_CHECKPOINT = 4


def _emit(pairs: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(pairs, sort_keys=False))
        return
    for k, v in pairs.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        print(f"{k}: {v}")


def cmd_classify_racg(args) -> int:
    g = read_graph(args.path)
    rep = classify_racg(g)
    _emit({"status": rep.status.value, "order0": rep.order0,
           "peripherals": [list(p) for p in rep.peripherals]}, args.json)
    return 0


def cmd_classify_coxeter(args) -> int:
    M = read_coxeter(args.path)
    rep = classify_coxeter(M, guard=args.guard)
    out = {"status": rep.status.value,
           "peripherals": [list(J) for J in rep.peripherals.J_list]}
    if rep.rh is not None:
        out["rh_certificate"] = rep.rh.summary()
    _emit(out, args.json)
    return 0


def _n_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vertex count list {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("vertex counts must be positive")
    return vals


def cmd_sweep(args) -> int:
    n_values = [n for chunk in args.n for n in chunk]
    cfg = SweepConfig(n_values, DensitySchedule(args.p), args.trials, args.seed, args.workers)
    rep = run_sweep(cfg)
    trials, agg = rep.write(args.out)
    print(f"trials_csv: {trials}")
    print(f"aggregate_csv: {agg}")
    sys.stdout.write(rep.aggregate_csv())
    return 0


def cmd_census(args) -> int:
    if args.n > 9:
        print(f"error: census refuses n={args.n} > 9", file=sys.stderr)
        return EXIT_INPUT
    if args.n >= 8:
        print(f"note: n={args.n} is a long-running job; use --checkpoint to resume", file=sys.stderr)
    res = census(args.n, workers=args.workers, checkpoint=args.checkpoint)
    print(res.sentence())
    print(f"RESULT {res.n} {res.t} {res.c}")
    return 0


def cmd_bounds(args) -> int:
    if args.f is not None:
        fv = bounds.f_value(args.f)
        print(f"f({args.f}): {mp_str(fv.value)}")
        print(f"f_truncation_bound: {mp_str(fv.tail_bound, 3)}")
    elif args.pi9:
        p = bounds.pi9()
        print(f"pi9: {float(p):.10f}")
        print(f"pi9_exact: {p.numerator}/{p.denominator}")
    elif args.pi_bound:
        a = bounds.pi_2n_bound(bounds.pi9(), 9, C9, T9)
        print(f"t9: {T9}")
        print(f"c9: {C9}")
        print(f"pi_2n_bound(9): {float(a):.10f}")
        print(f"alpha^2+0.03760<alpha: {'true' if a * a + bounds.Fraction(376, 10000) < a else 'false'}")
    else:
        n, k = args.tail
        M = bounds.integer_two_thirds(n)
        print(f"additive_tail({n},{k}): {mp_str(bounds.additive_tail(n, k))}")
        print(f"g({n},{M}): {mp_str(bounds.g(n, M))}")
        print(f"h({n}): {mp_str(bounds.h(n))}")
    print(f"precision: {bounds.PRECISION_NOTE}")
    return 0


def mp_str(x, digits: int = 15) -> str:
    return bounds.mpmath.nstr(x, digits)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxthick", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-racg", help="classify the RACG of a graph file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify_racg)

    p = sub.add_parser("classify-coxeter", help="classify a Coxeter matrix file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--guard", type=int, default=ENUMERATION_GUARD,
                   help="refuse matrices with more generators than this")
    p.set_defaults(func=cmd_classify_coxeter)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over G(n, p(n))")
    p.add_argument("--n", type=_n_list, action="append", required=True,
                   help="vertex counts, comma separated; may repeat")
    p.add_argument("--p", required=True, help="density expression in n, e.g. '10*log(n)/n'")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default="sweep_out", help="output directory for the two CSVs")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("census", help="exhaustive count of thick labelled graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bounds", help="evaluate the probability bounds")
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--f", type=int, metavar="N")
    sel.add_argument("--pi-bound", action="store_true")
    sel.add_argument("--pi9", action="store_true")
    sel.add_argument("--tail", type=int, nargs=2, metavar=("N", "K"))
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, CoxeterFormatError, DensityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
