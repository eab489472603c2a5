import numpy as np
import pytest

from masec import Scenario


@pytest.fixture
def paper_n4():
    """N=4 reference scenario: Bob at pi/2, Eves at 3pi/4 and pi/4."""
    return Scenario(bob_angle=np.pi / 2, eve_angles=(0.75 * np.pi, 0.25 * np.pi))


@pytest.fixture
def paper_n3():
    """N=3 reference scenario: Bob at pi/2, Eves at 1.1pi/2 and pi/4."""
    return Scenario(bob_angle=np.pi / 2, eve_angles=(0.55 * np.pi, 0.25 * np.pi))


@pytest.fixture
def fig5_scenario():
    """M=3 sweep scenario: Eves at pi/4, 0.85pi/2 and 1.1pi/2."""
    def make(power=1.0):
        return Scenario(bob_angle=np.pi / 2,
                        eve_angles=(0.25 * np.pi, 0.425 * np.pi, 0.55 * np.pi),
                        power_budget=power)
    return make


@pytest.fixture
def make_scenario():
    """Random-scenario factory for property sweeps."""
    def make(rng, m=None, aperture=10.0, min_spacing=0.5):
        m = int(rng.integers(1, 4)) if m is None else m
        return Scenario(
            bob_angle=float(rng.uniform(0.0, np.pi)),
            eve_angles=tuple(float(t) for t in rng.uniform(0.0, np.pi, m)),
            noise_power=float(rng.uniform(0.3, 2.0)),
            power_budget=float(rng.uniform(0.2, 5.0)),
            aperture=aperture,
            min_spacing=min_spacing,
        )
    return make


@pytest.fixture
def make_beamformer():
    """Random power-feasible beamformer factory."""
    def make(n, scenario, rng):
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return w * np.sqrt(scenario.power_budget) / np.linalg.norm(w)
    return make
