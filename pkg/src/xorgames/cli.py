"""Command-line entry point: ``xorgames <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time

from .catalog import make_chsh, make_eaos, make_odd_cycle
from .classical import DEFAULT_MAX_BITS, DeterministicStrategy, GameTooLargeForEnumeration, classical_value
from .formats import dumps_stable, load_strategy, pretty_angle
from .game_model import XorGameError, dump_game, load_game
from .kernel import BellState, kernel_agreement
from .montecarlo import simulate_classical, simulate_quantum
from .quantum import VALUE_LABEL, SolverConfig, quantum_value
from .verify import run_checks

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
SEED_ENV = "XORGAMES_SEED"
THREADS_ENV = "XORGAMES_THREADS"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: environment variable {name} must be an integer, got {raw!r}")


def _emit(args, record: dict | list[dict]) -> None:
    if args.format == "csv":
        rows = record if isinstance(record, list) else [record]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = list(rows[0])
        writer.writerow(header)
        for r in rows:
            writer.writerow([_csv_cell(r[k]) for k in header])
        sys.stdout.write(buf.getvalue())
    else:
        print(dumps_stable(record))


def _csv_cell(v):
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return " ".join(str(_csv_cell(x)) for x in v)
    if isinstance(v, dict):
        return dumps_stable(v, indent=0).replace("\n", "")
    return v


def _classical_record(game, threads: int) -> dict:
    result = classical_value(game, max_bits=DEFAULT_MAX_BITS, threads=threads)
    return {
        "value": result.value,
        "exact": str(result.exact_value),
        "witness_f": list(result.witness.f),
        "witness_g": list(result.witness.g),
        "strategies_enumerated": result.strategies_enumerated,
    }


def _quantum_record(game, config: SolverConfig) -> dict:
    result = quantum_value(game, config)
    w = result.witness
    return {
        "label": VALUE_LABEL,
        "value": result.value,
        "bell": w.bell.label,
        "alpha": list(w.alpha),
        "beta": list(w.beta),
        "alpha_pretty": [pretty_angle(a) for a in w.alpha],
        "beta_pretty": [pretty_angle(b) for b in w.beta],
        "starts_run": result.starts_run,
        "gradient_norm": result.best_gradient_norm,
        "converged": result.converged,
    }


def _solver_config(args) -> SolverConfig:
    bell = None if args.bell == "all" else BellState.parse(args.bell)
    return SolverConfig(starts=args.starts, seed=args.seed, bell=bell, tol=args.tol)


def cmd_catalog(args) -> int:
    if args.game == "chsh":
        game = make_chsh()
    elif args.game == "eaos":
        game = make_eaos()
    else:
        if args.n is None:
            raise XorGameError("odd-cycle needs --n")
        game = make_odd_cycle(args.n)
    print(dump_game(game))
    return EXIT_OK


def cmd_solve_classical(args) -> int:
    game = load_game(args.spec)
    _emit(args, _classical_record(game, args.threads))
    return EXIT_OK


def cmd_solve_quantum(args) -> int:
    game = load_game(args.spec)
    _emit(args, _quantum_record(game, _solver_config(args)))
    return EXIT_OK


def cmd_simulate(args) -> int:
    game = load_game(args.spec)
    strat = load_strategy(args.strategy)
    if args.rounds < 1:
        raise XorGameError("--rounds must be >= 1")
    sim = simulate_classical if isinstance(strat, DeterministicStrategy) else simulate_quantum
    report = sim(game, strat, args.rounds, args.seed, args.threads)
    _emit(args, report.to_dict())
    return EXIT_OK


def cmd_kernel_check(args) -> int:
    dev = kernel_agreement(args.samples, args.seed)
    _emit(args, {"samples": args.samples, "seed": args.seed, "max_deviation": dev, "pass": dev < 1e-12})
    return EXIT_OK if dev < 1e-12 else EXIT_VERIFY


def cmd_report(args) -> int:
    game = load_game(args.spec)
    t0 = time.perf_counter()
    classical = _classical_record(game, args.threads)
    t1 = time.perf_counter()
    quantum = _quantum_record(game, _solver_config(args))
    t2 = time.perf_counter()
    record = {
        "game": game.name,
        "classical": {
            "value": classical["value"],
            "exact": classical["exact"],
            "witness": {"f": classical["witness_f"], "g": classical["witness_g"]},
        },
        "quantum": {k: quantum[k] for k in ("label", "value", "bell", "alpha", "beta", "alpha_pretty", "beta_pretty")},
        "quantum_advantage": quantum["value"] - classical["value"],
    }
    if args.timing:
        record["timing_ms"] = {"classical": (t1 - t0) * 1e3, "quantum": (t2 - t1) * 1e3}
    if args.format == "csv":
        _emit(args, {"game": game.name, "classical": classical["value"], "quantum": quantum["value"],
                     "quantum_advantage": record["quantum_advantage"]})
    else:
        _emit(args, record)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    rows = run_checks(starts=args.starts, seed=args.seed, quick=args.quick, threads=args.threads)
    if args.format == "json":
        print(dumps_stable([r.__dict__ for r in rows]))
    elif args.format == "csv":
        _emit(args, [r.__dict__ for r in rows])
    else:
        widths = [max(len(r.name) for r in rows), 16, 40, 20]
        head = ("check", "expected", "computed", "tolerance")
        print("  ".join(h.ljust(w) for h, w in zip(head, widths)) + "  result")
        for r in rows:
            cells = (r.name, r.expected, r.computed, r.tolerance)
            mark = "PASS" if r.passed else "FAIL"
            print("  ".join(c.ljust(w) for c, w in zip(cells, widths)) + f"  {mark}  ({r.seconds * 1e3:.1f} ms)")
    failures = [r.name for r in rows if not r.passed]
    if failures:
        print("FAILED: " + ", ".join(failures), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    seed_default = _env_int(SEED_ENV, 0)
    threads_default = _env_int(THREADS_ENV, 1)

    def global_flags(parser, suppress: bool):
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--seed", type=int, default=d(seed_default), help="RNG seed (env %s)" % SEED_ENV)
        parser.add_argument("--threads", type=int, default=d(threads_default), help="worker threads (env %s)" % THREADS_ENV)
        parser.add_argument("--format", choices=("json", "csv", "table"), default=d(None))
        parser.add_argument("--quick", action="store_true", default=d(False), help="skip Monte Carlo checks")

    parser = argparse.ArgumentParser(prog="xorgames", description="Classical and single-ebit quantum values of XOR games.")
    global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    def solver_flags(p):
        p.add_argument("--starts", type=int, default=64)
        p.add_argument("--bell", default="all", help="φ+, φ−, ψ+, ψ− (or phi+, psi-, ...) or all")
        p.add_argument("--tol", type=float, default=1e-12, help="gradient-norm tolerance")

    p = add("catalog", cmd_catalog, "print a built-in game spec")
    p.add_argument("game", choices=("chsh", "odd-cycle", "eaos"))
    p.add_argument("--n", type=int)

    p = add("solve-classical", cmd_solve_classical, "exact classical value by enumeration")
    p.add_argument("spec")

    p = add("solve-quantum", cmd_solve_quantum, "single-ebit quantum value by multi-start ascent")
    p.add_argument("spec")
    solver_flags(p)

    p = add("simulate", cmd_simulate, "Monte Carlo rounds under a strategy file")
    p.add_argument("spec")
    p.add_argument("--strategy", required=True)
    p.add_argument("--rounds", type=int, default=10**6)

    p = add("kernel-check", cmd_kernel_check, "state oracle vs closed-form parity probabilities")
    p.add_argument("--samples", type=int, default=1000)

    p = add("report", cmd_report, "classical and quantum values side by side")
    p.add_argument("spec")
    p.add_argument("--timing", action="store_true", help="include per-phase wall time (not byte-stable)")
    solver_flags(p)

    p = add("verify-paper", cmd_verify_paper, "recompute the reference values of the catalog games")
    p.add_argument("--starts", type=int, default=64)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "table" if args.command == "verify-paper" else "json"
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except GameTooLargeForEnumeration as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (XorGameError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
