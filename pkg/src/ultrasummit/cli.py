"""
Command line entry point.

Exit codes: 0 success, 2 malformed input, 3 a violated contract (including
non-conjugate inputs to ``conj search`` and an exhausted oracle budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .conjugacy import conjugacy_search, is_conjugate
from .garside import ContractError, ParseError, PresentationMismatch
from .oracle import BudgetExceeded, OracleBudget
from .wordfmt import element_json, format_element, parse

EXIT_OK, EXIT_PARSE, EXIT_CONTRACT = 0, 2, 3


def _read(arg: str) -> str:
    """A word given inline, as ``@path``, or ``-`` for stdin."""
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def cmd_nf(args) -> int:
    _emit(element_json(parse(_read(args.word))))
    return EXIT_OK


def cmd_uss(args) -> int:
    from .summit import ultra_summit_set

    x = parse(_read(args.word))
    uss = ultra_summit_set(x)
    out = {
        "input": format_element(x),
        "inf": uss.inf,
        "sup": uss.sup,
        "size": len(uss),
        "n_trajectories": uss.n_trajectories,
        "trajectories": [
            {"period": t.period, "base": format_element(t.base)} for t in uss.trajectories
        ],
    }
    if args.elements or args.conjugators:
        out["elements"] = [format_element(z) for z in sorted(uss, key=lambda z: z.sort_key())]
    if args.conjugators:
        out["conjugators"] = {format_element(z): format_element(uss.conjugator(z)) for z in uss}
    _emit(out)
    return EXIT_OK


def cmd_conj(args) -> int:
    x = parse(_read(args.x))
    y = parse(_read(args.y))
    if args.mode == "decide":
        ok, w = is_conjugate(x, y)
        _emit({
            "conjugate": ok,
            "witness": format_element(w.conjugator) if w else None,
            "verified": bool(w),
        })
        return EXIT_OK
    w = conjugacy_search(x, y, seed=args.seed, step_cap=args.cap)
    _emit({
        "conjugate": True,
        "witness": format_element(w.conjugator),
        "verified": True,
        "method": w.method,
        "steps": w.steps,
        "seed": args.seed,
    })
    return EXIT_OK


def _budget(args) -> OracleBudget:
    if args.budget is None:
        return OracleBudget()
    return OracleBudget(max_closure=args.budget)


def cmd_experiment(args) -> int:
    import random

    from .bench import run_experiment, write_csv, write_jsonl

    seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(31)
    budget = _budget(args) if args.table == "table1" and not args.no_oracle else None
    rows, log = run_experiment(args.table, args.presentation, args.n, args.r, args.samples, seed,
                               budget=budget, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            write_jsonl(log, fh)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .selfcheck import run_checks

    failures = 0
    for name, ok, detail in run_checks(args.presentation, args.n, samples=args.samples, seed=args.seed):
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failures += not ok
    return EXIT_OK if failures == 0 else EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ultrasummit", description="Garside normal forms and ultra summit sets for braid groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of a word, as JSON")
    p.add_argument("word", help="e.g. 'artin 3 / 1 2 1'; '@file' or '-' for stdin")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("uss", help="ultra summit set summary, as JSON")
    p.add_argument("word")
    p.add_argument("--elements", action="store_true", help="list every element")
    p.add_argument("--conjugators", action="store_true", help="include a conjugator from the input to each element")
    p.set_defaults(func=cmd_uss)

    p = sub.add_parser("conj", help="conjugacy decision or search")
    p.add_argument("mode", choices=["decide", "search"])
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None, help="random steps before falling back to the closure")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("experiment", help="summit-set statistics as CSV")
    p.add_argument("table", choices=["table1", "table3"])
    p.add_argument("--presentation", default="artin", choices=["artin", "bkl"])
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--r", type=int, nargs="+", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=None, help="omit for a fresh random seed (reported in the CSV)")
    p.add_argument("--budget", type=int, default=None, help="oracle closure limit for the |S_x| columns")
    p.add_argument("--no-oracle", action="store_true", help="skip the super summit set columns")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--log", help="per-sample JSON lines path")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("oracle", help="small-index validation against brute force")
    p.add_argument("action", choices=["check"])
    p.add_argument("--presentation", default=None, choices=["artin", "bkl"])
    p.add_argument("--n", type=int, nargs="+", default=None)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, PresentationMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ContractError, BudgetExceeded) as e:
        print(f"contract violation: {e}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
