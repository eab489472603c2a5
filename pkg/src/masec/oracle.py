"""Independent verification oracles.

Everything here deliberately avoids the closed-form paths it checks:
gradients are re-derived by central finite differences, the beamformer
optimum is stress-tested against random sampling, and small instances
are solved exhaustively on a position grid.  The oracles ship with the
package (see the ``verify`` CLI command) so any scenario can be
re-validated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, islice

import numpy as np

from .beamformer import build_forms, optimal_beamformer, solve_beamformer
from .core import (FEASIBILITY_TOL, AntennaPositions, Scenario, as_coords,
                   as_weights, beam_gain)
from .driver import SolveConfig, solve
from .positions import gradient_psi, objective_psi, random_positions, real_lift

_CHUNK = 16384


@dataclass(frozen=True)
class GridSpec:
    """Exhaustive-search grid: position step, antenna count, eval cap."""

    resolution: float
    n: int
    max_evals: int = 10_000_000

    def __post_init__(self):
        if not self.resolution > 0.0:
            raise ValueError("resolution must be positive")
        if not 1 <= self.n <= 3:
            raise ValueError("grid search supports 1 <= N <= 3 only")
        if not self.max_evals >= 1:
            raise ValueError("max_evals must be positive")


def fd_gradient(x, w, scenario: Scenario, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the unclamped objective.

    Component n is (Psi(x + h e_n) - Psi(x - h e_n)) / (2 h), evaluated
    without projection: this checks the smooth objective that the
    analytic gradient differentiates, not the constrained update.
    """
    if not h > 0.0:
        raise ValueError("step h must be positive")
    xs = np.array(as_coords(x), dtype=float)
    wv = as_weights(w)
    grad = np.zeros(xs.size)
    for i in range(xs.size):
        orig = xs[i]
        xs[i] = orig + h
        plus = objective_psi(xs, wv, scenario)
        xs[i] = orig - h
        minus = objective_psi(xs, wv, scenario)
        xs[i] = orig
        grad[i] = (plus - minus) / (2.0 * h)
    return grad


def sample_beamformers(forms, scenario: Scenario, count: int, seed: int) -> float:
    """Best Rayleigh objective over random power-feasible beamformers.

    Draws ``count`` vectors with i.i.d. standard-normal real/imaginary
    parts, scales each to ||w||^2 = P_A and returns the largest value of
    (1 + w^H A w) / (1 + w^H B w).  Deterministic for a fixed seed; the
    result can never exceed the closed-form optimum.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    n = forms.n
    rng = np.random.default_rng(seed)
    W = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    W *= (np.sqrt(scenario.power_budget) / np.linalg.norm(W, axis=1))[:, None]
    num = 1.0 + np.einsum("ki,ij,kj->k", W.conj(), forms.A, W).real
    den = 1.0 + np.einsum("ki,ij,kj->k", W.conj(), forms.B, W).real
    return float(np.max(num / den))


def _grid_points(scenario: Scenario, resolution: float) -> np.ndarray:
    k_max = int(math.floor(scenario.aperture / resolution + 1e-9))
    pts = resolution * np.arange(k_max + 1)
    return np.minimum(pts, scenario.aperture)


def _index_tuple_count(m: int, n: int) -> int:
    return math.comb(m + n - 1, n)


def _best_rates_for_chunk(X, scenario):
    """Clamped optimal secrecy rate per candidate position row, batched."""
    k, n = X.shape
    scale = 2.0 * np.pi / scenario.wavelength
    sigma2 = scenario.noise_power

    def outer_forms(theta):
        a = np.exp(1j * scale * np.cos(theta) * X)
        return a[:, :, None] * a[:, None, :].conj()

    A = outer_forms(scenario.bob_angle) / sigma2
    B = np.zeros((k, n, n), dtype=complex)
    for theta in scenario.eve_angles:
        B += outer_forms(theta)
    B /= sigma2
    shift = np.eye(n) / scenario.power_budget
    chol = np.linalg.cholesky(B + shift)
    reduced = np.linalg.solve(chol, A + shift)
    reduced = np.linalg.solve(chol, reduced.conj().transpose(0, 2, 1))
    reduced = 0.5 * (reduced + reduced.conj().transpose(0, 2, 1))
    lam_max = np.linalg.eigvalsh(reduced)[:, -1]
    return np.maximum(np.log2(lam_max), 0.0)


def grid_search(scenario: Scenario, spec: GridSpec):
    """Exhaustive joint optimum over gridded positions (global oracle).

    Enumerates every sorted feasible N-tuple on the grid in lexicographic
    order, computes the optimal-beamformer secrecy rate for each and
    returns the best; exact rate ties resolve to the lexicographically
    smallest tuple, so the result does not depend on enumeration order.

    Returns:
        (AntennaPositions, Beamformer, float): best grid positions, the
        optimal beamformer there, and the clamped secrecy rate.
    """
    scenario.check_feasible(spec.n)
    pts = _grid_points(scenario, spec.resolution)
    gap = max(1, math.ceil(scenario.min_spacing / spec.resolution - 1e-9))
    if gap * spec.resolution < scenario.min_spacing - FEASIBILITY_TOL:
        raise ValueError("resolution does not resolve the minimum spacing")
    m = (pts.size - 1) - (spec.n - 1) * gap + 1
    if m < 1:
        raise ValueError(
            f"grid step {spec.resolution} leaves no feasible {spec.n}-tuple; "
            "pick a resolution dividing min_spacing")
    total = _index_tuple_count(m, spec.n)
    if total > spec.max_evals:
        raise ValueError(f"grid too large: {total} evaluations exceed the cap "
                         f"{spec.max_evals}")

    offsets = gap * np.arange(spec.n)
    best_rate = -np.inf
    best_x = None
    combos = combinations_with_replacement(range(m), spec.n)
    while True:
        block = np.array(list(islice(combos, _CHUNK)), dtype=int)
        if block.size == 0:
            break
        X = pts[block + offsets]
        rates = _best_rates_for_chunk(X, scenario)
        j = int(np.argmax(rates))
        if rates[j] > best_rate:
            best_rate = float(rates[j])
            best_x = X[j].copy()
    best_x.setflags(write=False)
    positions = AntennaPositions(best_x)
    w = optimal_beamformer(build_forms(positions, scenario), scenario)
    return positions, w, best_rate


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def _random_beamformer(n, scenario, rng):
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return w * np.sqrt(scenario.power_budget) / np.linalg.norm(w)


def run_verification(scenario: Scenario, n: int, seed: int = 0,
                     grid_resolution: float | None = None,
                     gradient_fn=None) -> VerifyReport:
    """Run the oracle suite against one scenario.

    Checks the lift identity, the analytic gradient against central
    finite differences, beamformer stationarity and sampling optimality,
    and (for N <= 3, when the grid fits the evaluation cap) the
    alternating solver against the exhaustive grid oracle.

    ``gradient_fn`` overrides the gradient under test; it exists as a
    hook for negative-control tests.
    """
    rng = np.random.default_rng(seed)
    grad_fn = gradient_psi if gradient_fn is None else gradient_fn
    checks = []

    err = 0.0
    for _ in range(200):
        x = random_positions(n, scenario, rng)
        w = _random_beamformer(n, scenario, rng)
        gains = real_lift(x, w, scenario).gains()
        for i, theta in enumerate(scenario.angles):
            direct = beam_gain(x, w, theta, scenario)
            err = max(err, abs(gains[i] - direct) / max(1.0, direct))
    checks.append(VerifyCheck(
        "lift-identity", "pass" if err <= 1e-9 else "fail",
        f"max relative error {err:.3e} (tol 1e-09)"))

    err = 0.0
    for _ in range(20):
        x = random_positions(n, scenario, rng)
        w = _random_beamformer(n, scenario, rng)
        analytic = grad_fn(x, w, scenario)
        numeric = fd_gradient(x, w, scenario, h=1e-6)
        scale = max(float(np.linalg.norm(numeric)), 1e-12)
        err = max(err, float(np.linalg.norm(analytic - numeric)) / scale)
    checks.append(VerifyCheck(
        "fd-gradient", "pass" if err <= 1e-5 else "fail",
        f"max relative L2 error {err:.3e} (tol 1e-05)"))

    resid_worst = 0.0
    margin_worst = np.inf
    for _ in range(5):
        x = random_positions(n, scenario, rng)
        forms = build_forms(x, scenario)
        sol = solve_beamformer(forms, scenario)
        wv = sol.beamformer.w
        shift = np.eye(n) / scenario.power_budget
        resid = np.linalg.norm((forms.A + shift) @ wv
                               - sol.eigenvalue * ((forms.B + shift) @ wv))
        resid /= np.linalg.norm(wv) * np.linalg.norm(forms.A + shift, 2)
        resid_worst = max(resid_worst, float(resid))
        best = sample_beamformers(forms, scenario, 10_000,
                                  int(rng.integers(2**31)))
        margin_worst = min(margin_worst, sol.eigenvalue - best)
    checks.append(VerifyCheck(
        "beamformer-stationarity",
        "pass" if resid_worst <= 1e-8 else "fail",
        f"max scaled residual {resid_worst:.3e} (tol 1e-08)"))
    checks.append(VerifyCheck(
        "beamformer-sampling",
        "pass" if margin_worst >= -1e-9 else "fail",
        f"min (optimum - best sample) {margin_worst:.3e}"))

    if n > 3:
        checks.append(VerifyCheck("grid-comparison", "skip",
                                  f"exhaustive search limited to N <= 3, N={n}"))
    else:
        spec = GridSpec(resolution=(grid_resolution or scenario.wavelength / 50),
                        n=n)
        try:
            _, _, grid_rate = grid_search(scenario, spec)
        except ValueError as exc:
            checks.append(VerifyCheck("grid-comparison", "skip", str(exc)))
        else:
            alg_rate = solve(n, scenario, SolveConfig()).final_rate
            ok = alg_rate >= 0.95 * grid_rate - 1e-12
            checks.append(VerifyCheck(
                "grid-comparison", "pass" if ok else "fail",
                f"algorithm {alg_rate:.6f} vs grid {grid_rate:.6f} bps/Hz "
                "(threshold 0.95)"))

    return VerifyReport(checks=tuple(checks))
