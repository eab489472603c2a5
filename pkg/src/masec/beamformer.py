"""Optimal transmit beamformer for fixed antenna positions.

For fixed positions the secrecy objective reduces to a generalized
Rayleigh quotient (1 + w^H A w) / (1 + w^H B w) over ||w||^2 = P_A,
maximized in closed form by the dominant eigenvector of the Hermitian
pencil (A + I/P_A, B + I/P_A).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Beamformer, Scenario, as_coords, as_weights, steering_vector

# Relative gap under which the top eigenvalue is flagged as degenerate.
DEGENERACY_RTOL = 1e-10


class EigensolverError(RuntimeError):
    """The eigen decomposition failed to converge."""


@dataclass(frozen=True)
class QuadraticForms:
    """Hermitian PSD quadratic forms of the secrecy objective.

    ``A`` is the rank-1 signal form (1/sigma^2) a_0 a_0^H toward Bob and
    ``B`` the rank-<=M leakage form summed over eavesdropper angles.
    """

    A: np.ndarray
    B: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]


def build_forms(x, scenario: Scenario) -> QuadraticForms:
    """Assemble the signal/leakage forms A and B at the given positions."""
    xs = as_coords(x)
    lam = scenario.wavelength
    sigma2 = scenario.noise_power
    a0 = steering_vector(xs, scenario.bob_angle, lam)
    A = np.outer(a0, a0.conj()) / sigma2
    B = np.zeros((xs.size, xs.size), dtype=complex)
    for theta in scenario.eve_angles:
        ai = steering_vector(xs, theta, lam)
        B += np.outer(ai, ai.conj())
    B /= sigma2
    A.setflags(write=False)
    B.setflags(write=False)
    return QuadraticForms(A=A, B=B)


def rayleigh_objective(forms: QuadraticForms, w, scenario: Scenario) -> float:
    """Value of (1 + w^H A w) / (1 + w^H B w) at the given beamformer."""
    wv = as_weights(w)
    num = 1.0 + float(np.vdot(wv, forms.A @ wv).real)
    den = 1.0 + float(np.vdot(wv, forms.B @ wv).real)
    return num / den


@dataclass(frozen=True)
class BeamformerSolution:
    """Closed-form solve result with eigen diagnostics.

    ``eigenvalue`` is the top generalized eigenvalue, which equals the
    optimal Rayleigh objective; ``degenerate`` flags a (numerically)
    multiple top eigenvalue, in which case any vector of the top
    eigenspace is returned.
    """

    beamformer: Beamformer
    eigenvalue: float
    eigen_gap: float
    degenerate: bool


def solve_beamformer(forms: QuadraticForms, scenario: Scenario) -> BeamformerSolution:
    """Maximize the Rayleigh objective over ||w||^2 = P_A.

    Reduces the pencil (A + I/P_A, B + I/P_A) to a standard Hermitian
    problem through the Cholesky factor of the (positive definite)
    denominator, takes the top eigenpair and maps it back.  The returned
    phase is normalized so the largest-modulus entry is real positive,
    making the output deterministic.
    """
    n = forms.n
    budget = scenario.power_budget
    shift = np.eye(n) / budget
    num = forms.A + shift
    den = forms.B + shift
    try:
        chol = np.linalg.cholesky(den)
        # reduced = L^-1 (A + I/P_A) L^-H, Hermitian with the pencil's spectrum
        reduced = np.linalg.solve(chol, num)
        reduced = np.linalg.solve(chol, reduced.conj().T).conj().T
        reduced = 0.5 * (reduced + reduced.conj().T)
        eigvals, eigvecs = np.linalg.eigh(reduced)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigen decomposition failed: {exc}") from exc
    lam_max = float(eigvals[-1])
    o = np.linalg.solve(chol.conj().T, eigvecs[:, -1])
    o /= np.linalg.norm(o)
    w = np.sqrt(budget) * o
    k = int(np.argmax(np.abs(w)))
    w = w * (w[k].conj() / abs(w[k]))
    w.setflags(write=False)
    if n > 1:
        gap = float(eigvals[-1] - eigvals[-2])
        degenerate = gap <= DEGENERACY_RTOL * max(1.0, abs(lam_max))
    else:
        gap = float("inf")
        degenerate = False
    return BeamformerSolution(beamformer=Beamformer(w), eigenvalue=lam_max,
                              eigen_gap=gap, degenerate=degenerate)


def optimal_beamformer(forms: QuadraticForms, scenario: Scenario) -> Beamformer:
    """Optimal beamformer sqrt(P_A) o_max for the given quadratic forms."""
    return solve_beamformer(forms, scenario).beamformer
