"""Command-line front end.

Subcommands:
    optimize     alternating solve; writes trace CSVs and solution.json
    beampattern  beam gain over [0, pi] for a solution or the FPA baseline
    sweep-n      secrecy rate vs antenna count for MA and FPA arrays
    verify       run the oracle suite against a scenario

All commands take ``--scenario`` and honor ``--out`` and ``--seed``;
fixed seeds give byte-identical outputs.  Exit codes: 0 on success, 1
when verification checks fail, 2 on validation or I/O errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from .beamformer import build_forms, optimal_beamformer
from .core import InfeasibleError, beam_gain
from .driver import initial_positions, solve, solve_fpa
from .oracle import run_verification
from .positions import random_positions
from .scenario_io import (RunSpec, ScenarioFileError, load_run_spec,
                          load_solution, write_beampattern, write_inner_traces,
                          write_outer_trace, write_solution, write_sweep)

DEFAULT_ANGLE_COUNT = 721


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, help="scenario JSON file")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--seed", type=int, default=None,
                        help="override the scenario file seed")
    common.add_argument("--restarts", type=int, default=0,
                        help="extra solves from random feasible layouts")

    parser = argparse.ArgumentParser(
        prog="masec",
        description="Secrecy-rate maximization for movable-antenna arrays")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("optimize", parents=[common],
                   help="run the alternating solver")
    bp = sub.add_parser("beampattern", parents=[common],
                        help="sample the beam gain over [0, pi]")
    bp.add_argument("--solution", default=None,
                    help="solution.json to evaluate (default: <out>/solution.json)")
    bp.add_argument("--fpa", action="store_true",
                    help="use the fixed-position baseline instead of a solution")
    bp.add_argument("--angles", type=int, default=DEFAULT_ANGLE_COUNT,
                    help="number of sample angles")
    sw = sub.add_parser("sweep-n", parents=[common],
                        help="sweep the antenna count for MA and FPA")
    sw.add_argument("--n-min", type=int, default=2)
    sw.add_argument("--n-max", type=int, default=8)
    sw.add_argument("--powers", default="1,10",
                    help="comma-separated power budgets")
    sub.add_parser("verify", parents=[common], help="run the oracle suite")
    return parser


def _load(args) -> RunSpec:
    spec = load_run_spec(args.scenario)
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    return spec


def _solve_with_restarts(spec: RunSpec, restarts: int, rng):
    spec.scenario.check_feasible(spec.n_antennas)
    best = solve(spec.n_antennas, spec.scenario, spec.config)
    for _ in range(restarts):
        x0 = random_positions(spec.n_antennas, spec.scenario, rng)
        trial = solve(spec.n_antennas, spec.scenario, spec.config, x0=x0)
        if trial.final_rate > best.final_rate:
            best = trial
    return best


def _cmd_optimize(args) -> int:
    spec = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)
    trace = _solve_with_restarts(spec, args.restarts, rng)
    write_outer_trace(out / "trace_outer.csv", trace)
    write_inner_traces(out, trace)
    write_solution(out / "solution.json", trace)
    status = "converged" if trace.converged else "NOT converged"
    print(f"secrecy rate {trace.final_rate:.9f} bps/Hz after "
          f"{trace.n_outer} outer iterations ({status})")
    return 0


def _cmd_beampattern(args) -> int:
    spec = _load(args)
    if args.angles < 2:
        raise ScenarioFileError("--angles must be at least 2")
    if args.fpa:
        x = initial_positions(spec.n_antennas, spec.scenario)
        w = optimal_beamformer(build_forms(x, spec.scenario), spec.scenario)
    else:
        path = Path(args.solution) if args.solution else Path(args.out) / "solution.json"
        if not path.exists():
            raise ScenarioFileError(
                f"no solution file at {path}; run optimize first or pass --fpa")
        x, w, _ = load_solution(path)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    thetas = np.linspace(0.0, np.pi, args.angles)
    gains = [beam_gain(x, w, t, spec.scenario) for t in thetas]
    write_beampattern(out / "beampattern.csv", thetas, gains)
    print(f"wrote beampattern.csv ({args.angles} angles)")
    return 0


def _cmd_sweep(args) -> int:
    spec = _load(args)
    if args.n_min < 2:
        raise ScenarioFileError("--n-min must be at least 2")
    if args.n_max < args.n_min:
        raise ScenarioFileError("--n-max must be >= --n-min")
    try:
        powers = sorted(float(p) for p in args.powers.split(","))
    except ValueError as exc:
        raise ScenarioFileError(f"bad --powers list: {exc}") from exc
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for j, power in enumerate(powers):
            scenario = dataclasses.replace(spec.scenario, power_budget=power)
            cell = RunSpec(scenario=scenario, n_antennas=n,
                           config=spec.config, seed=spec.seed)
            try:
                rng = np.random.default_rng([cell.seed, n, j])
                trace = _solve_with_restarts(cell, args.restarts, rng)
                _, fpa_rate = solve_fpa(n, scenario)
                rows.append((n, power, trace.final_rate, fpa_rate, ""))
            except (ValueError, RuntimeError) as exc:
                rows.append((n, power, "", "", str(exc)))
    write_sweep(out / "sweep_n.csv", rows)
    print(f"wrote sweep_n.csv ({len(rows)} rows)")
    return 0


def _cmd_verify(args) -> int:
    spec = _load(args)
    report = run_verification(spec.scenario, spec.n_antennas, seed=spec.seed)
    for check in report.checks:
        print(f"{check.status.upper():4s}  {check.name:24s} {check.detail}")
    if not report.passed:
        print("verification FAILED")
        return 1
    print("verification passed")
    return 0


_COMMANDS = {
    "optimize": _cmd_optimize,
    "beampattern": _cmd_beampattern,
    "sweep-n": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioFileError, InfeasibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
