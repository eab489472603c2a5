"""Alternating optimization of beamformer and antenna positions.

Starting from the uniformly spaced layout, each outer round first solves
the beamformer in closed form and then runs projected gradient ascent on
the positions.  Both steps can only improve the unclamped objective, so
the end-of-round secrecy rate is non-decreasing and the loop terminates
at a prescribed accuracy.  The fixed-position (FPA) baseline keeps the
initial layout and optimizes the beamformer once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .beamformer import build_forms, optimal_beamformer
from .core import AntennaPositions, Beamformer, Scenario, secrecy_rate
from .positions import PgaConfig, optimize_positions


@dataclass(frozen=True)
class SolveConfig:
    """Outer-loop settings around the per-round PGA configuration."""

    pga: PgaConfig = field(default_factory=PgaConfig)
    max_outer_iters: int = 50
    outer_tol: float = 1e-6

    def __post_init__(self):
        if not self.max_outer_iters >= 1:
            raise ValueError("max_outer_iters must be positive")
        if not self.outer_tol > 0.0:
            raise ValueError("outer_tol must be positive")


@dataclass(frozen=True)
class OuterRecord:
    """Secrecy rate after each half-step of one outer round (1-based)."""

    iteration: int
    rate_after_w: float
    rate_after_x: float


@dataclass
class OptimizationTrace:
    """Full record of one alternating solve.

    ``inner[k]`` holds the Psi trace of round k's position ascent
    (entry 0 is the starting value).  The sequence of ``rate_after_x``
    values is non-decreasing up to floating-point noise.
    """

    outer: list
    inner: list
    final_x: AntennaPositions
    final_w: Beamformer
    final_rate: float
    converged: bool

    @property
    def n_outer(self) -> int:
        return len(self.outer)


def initial_positions(n: int, scenario: Scenario) -> AntennaPositions:
    """Uniform layout [0, d_min, ..., (N-1) d_min]; also the FPA layout."""
    scenario.check_feasible(n)
    x = scenario.min_spacing * np.arange(n, dtype=float)
    x.setflags(write=False)
    return AntennaPositions(x)


def solve(n: int, scenario: Scenario, cfg: SolveConfig | None = None,
          x0: AntennaPositions | None = None) -> OptimizationTrace:
    """Alternating optimization of (w, x) for the secrecy rate.

    Each round updates the beamformer in closed form for the current
    positions, then improves the positions by projected gradient ascent;
    the loop stops when the end-of-round rate changes by at most
    ``cfg.outer_tol`` or after ``cfg.max_outer_iters`` rounds (reported
    through ``converged``).  The clamp [.]^+ is kept out of the
    optimization and reapplied in the reported rates.

    Args:
        n: number of antennas.
        scenario: problem instance (must satisfy L >= (N-1) d_min).
        cfg: solver settings; defaults reproduce the reference setup.
        x0: optional feasible starting layout (defaults to the uniform
            initializer, which equals the FPA layout).

    Returns:
        OptimizationTrace with per-round rates, inner Psi traces and the
        final solution.
    """
    if cfg is None:
        cfg = SolveConfig()
    x = initial_positions(n, scenario) if x0 is None else x0
    outer = []
    inner = []
    prev_rate = None
    converged = False
    w = None
    for k in range(1, cfg.max_outer_iters + 1):
        w = optimal_beamformer(build_forms(x, scenario), scenario)
        rate_w = secrecy_rate(x, w, scenario)
        x, psi_trace = optimize_positions(x, w, scenario, cfg.pga)
        rate_x = secrecy_rate(x, w, scenario)
        outer.append(OuterRecord(iteration=k, rate_after_w=rate_w,
                                 rate_after_x=rate_x))
        inner.append(psi_trace)
        if prev_rate is not None and abs(rate_x - prev_rate) <= cfg.outer_tol:
            converged = True
            break
        prev_rate = rate_x
    return OptimizationTrace(outer=outer, inner=inner, final_x=x, final_w=w,
                             final_rate=secrecy_rate(x, w, scenario),
                             converged=converged)


def solve_fpa(n: int, scenario: Scenario):
    """Fixed-position baseline: uniform layout, one beamformer solve.

    Returns:
        (Beamformer, float): optimal beamformer and its secrecy rate.
    """
    x = initial_positions(n, scenario)
    w = optimal_beamformer(build_forms(x, scenario), scenario)
    return w, secrecy_rate(x, w, scenario)
