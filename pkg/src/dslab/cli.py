"""``dslab`` command line.

Exit status: 0 when every verdict passes, 1 on a failing verdict, 2 when a
verdict is inconclusive, 64 on bad usage and 65 when an index does not fit
the resolution.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import verification as V
from .exceptions import DomainError, DyadicError, ModeError, ResolutionError
from .kernels import cesaro_kernel, dirichlet_kernel, fejer_kernel, norlund_kernel
from .means import parse_mean
from .report import ExperimentReport
from .weights import CONDITIONS, _NEEDS_ALPHA, check_condition, parse_preset, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_RESOLUTION = 64, 65

_EXIT = {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_RANGE = re.compile(r"^\s*(2\^)?(\d+)\s*\.\.\s*(2\^)?(\d+)\s*$")


def parse_grid(text: str) -> list[int]:
    """``"a..b"``, ``"2^a..2^b"``, ``"n"`` or a comma list."""
    m = _RANGE.match(text)
    if m:
        dyadic_lo, lo, dyadic_hi, hi = m.groups()
        if bool(dyadic_lo) != bool(dyadic_hi):
            raise UsageError(f"mixed grid bounds in {text!r}")
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise UsageError(f"empty grid {text!r}")
        if dyadic_lo:
            return [1 << k for k in range(lo, hi + 1)]
        return list(range(lo, hi + 1))
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def thread_count(cli_value: int) -> int:
    env = os.environ.get("DSLAB_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"DSLAB_THREADS must be an integer, got {env!r}") from None
    else:
        value = cli_value
    if value < 1:
        raise UsageError("thread count must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dslab", description="Walsh and Walsh-Kaczmarz summability experiments.")
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--output", help="write <OUTPUT>.csv and <OUTPUT>.json")
    common.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="dump kernel values")
    p.add_argument("--kind", choices=("dirichlet", "fejer", "cesaro", "norlund"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--system", default="walsh_paley")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--alpha")
    p.add_argument("--weights", default="constant")

    p = sub.add_parser("conditions", parents=[common], help="weight condition checks")
    p.add_argument("--weights", required=True)
    p.add_argument("--n", default="2^3..2^10", help="grid; its maximum is n_max")
    p.add_argument("--alpha")
    p.add_argument("--condition", action="append", choices=CONDITIONS)

    p = sub.add_parser("lemma2", parents=[common], help="kernel decomposition identity")
    p.add_argument("--weights", default="constant")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--resolution", type=int)

    p = sub.add_parser("lemma3", parents=[common], help="empirical Norlund kernel majorant constant")
    p.add_argument("--weights", help="defaults to cesaro:<alpha>")
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--n", default="256", help="n_max, or a grid whose maximum is used")
    p.add_argument("--resolution", type=int, default=10)

    p = sub.add_parser("blowup2", parents=[common], help="weak-Lp over Hardy ratios, 0 < p < 1/2")
    p.add_argument("--weights", default="constant")
    p.add_argument("--p", required=True)
    p.add_argument("--n", default="2..8")

    p = sub.add_parser("blowup3", parents=[common], help="weak-Lp over Hardy ratios for alpha-type weights")
    p.add_argument("--weights", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--p")
    p.add_argument("--n", default="2..10")
    p.add_argument("--part", choices=("b", "c"), default="b")

    p = sub.add_parser("converge", parents=[common], help="L1 convergence of means")
    p.add_argument("--mean", default="fejer")
    p.add_argument("--system", default="walsh_kaczmarz")
    p.add_argument("--n", default="8,1024")
    p.add_argument("--resolution", type=int, default=12)

    sub.add_parser("corollaries", parents=[common], help="blow-up suite for log, power and Norlund-log weights")
    return parser


def _kernel(args) -> tuple[ExperimentReport, str]:
    exact = args.mode == "exact"
    if args.kind == "dirichlet":
        k = dirichlet_kernel(args.n, args.system, args.resolution, exact)
    elif args.kind == "fejer":
        k = fejer_kernel(args.n, args.system, args.resolution, exact)
    elif args.kind == "cesaro":
        if args.alpha is None:
            raise UsageError("cesaro kernels need --alpha")
        k = cesaro_kernel(args.n, args.alpha, args.system, args.resolution, exact)
    else:
        q = parse_preset(args.weights)
        if exact and not q.rational:
            raise ModeError(f"{q.name} is not rational; rerun with --mode float")
        k = norlund_kernel(args.n, q, args.system, args.resolution, exact)
    columns = [f"x{i}" for i in range(1 << args.resolution)]
    report = ExperimentReport(
        "kernel",
        {"kind": args.kind, "n": args.n, "system": k.system.value, "resolution": args.resolution},
        columns,
        [tuple(k.values)],
        "pass",
        float_columns=frozenset() if exact else frozenset(columns),
    )
    # stdout carries the bare value row
    return report, report.to_csv().splitlines()[1] + "\n"


def _conditions(args, threads) -> ExperimentReport:
    q = parse_preset(args.weights)
    n_max = max(parse_grid(args.n))
    chosen = args.condition or [c for c in CONDITIONS if c not in _NEEDS_ALPHA or args.alpha]
    rows = []
    kinds = []
    for cond in chosen:
        if cond in _NEEDS_ALPHA and args.alpha is None:
            raise UsageError(f"{cond} needs --alpha")
        r = check_condition(q, cond, n_max, args.alpha)
        kinds.append(r.verdict)
        stats = ";".join(f"{k}={v!r}" for k, v in sorted(r.summary.items()))
        rows.append((cond, r.label, stats, r.note))
    if "fails" in kinds:
        verdict = "fail"
    elif "inconclusive" in kinds:
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return ExperimentReport(
        "conditions",
        {"weights": q.key, "n_max": n_max, "alpha": args.alpha},
        ["condition", "verdict", "summary", "note"],
        rows,
        verdict,
        {r[0]: r[1] for r in rows},
    )


def _run(args) -> tuple[ExperimentReport, str | None]:
    threads = thread_count(args.threads)
    cmd = args.command
    if cmd == "kernel":
        return _kernel(args)
    if cmd == "conditions":
        return _conditions(args, threads), None
    if cmd == "lemma2":
        q = parse_preset(args.weights)
        if args.mode != "exact":
            raise ModeError("lemma2 is an exact identity check; use --mode exact")
        return V.verify_lemma2(q, args.m, args.resolution, threads), None
    if cmd == "lemma3":
        alpha = parse_rational(args.alpha)
        q = parse_preset(args.weights or f"cesaro:{alpha}")
        return V.verify_lemma3(q, alpha, max(parse_grid(args.n)), args.resolution, threads), None
    if cmd == "blowup2":
        q = parse_preset(args.weights)
        return V.blowup_theorem2(q, args.p, parse_grid(args.n), threads, args.mode), None
    if cmd == "blowup3":
        q = parse_preset(args.weights)
        part = "part_" + args.part
        if part == "part_b" and args.p is None:
            raise UsageError("part b needs --p")
        return V.blowup_theorem3(q, args.alpha, args.p, parse_grid(args.n), part, threads, args.mode), None
    if cmd == "converge":
        mean = parse_mean(args.mean, args.system)
        f = V.standard_test_function(args.resolution)
        return V.convergence_experiment(mean, f, parse_grid(args.n), threads), None
    return V.corollary_presets_suite(threads), None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report, text = _run(args)
    except UsageError as exc:
        print(f"dslab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResolutionError as exc:
        print(f"dslab: resolution error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (DomainError, ModeError, DyadicError, ValueError) as exc:
        print(f"dslab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        report.write(args.output)
    sys.stdout.write(text if text is not None else report.to_csv())
    if text is None:
        print(f"# verdict: {report.verdict}", file=sys.stderr)
    return _EXIT[report.verdict]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
