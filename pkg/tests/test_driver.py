import numpy as np
import pytest

from masec import (InfeasibleError, PgaConfig, Scenario, SolveConfig,
                   beam_gain, initial_positions, objective_psi, secrecy_rate,
                   solve, solve_fpa)


class TestInitialPositions:
    def test_paper_layout(self, paper_n4):
        assert np.array_equal(initial_positions(4, paper_n4).x,
                              [0.0, 0.5, 1.0, 1.5])

    def test_single_antenna(self, paper_n4):
        assert np.array_equal(initial_positions(1, paper_n4).x, [0.0])

    def test_boundary_fill(self, paper_n4):
        x = initial_positions(21, paper_n4).x
        assert x[-1] == 10.0
        assert np.allclose(np.diff(x), 0.5)

    def test_infeasible(self, paper_n4):
        with pytest.raises(InfeasibleError):
            initial_positions(22, paper_n4)


class TestSolve:
    def test_paper_n4_reaches_reference_rate(self, paper_n4):
        trace = solve(4, paper_n4)
        assert trace.converged
        # the optimum of this scenario is capped by log2(1 + N P_A / sigma^2)
        assert trace.final_rate <= np.log2(5.0) + 1e-9
        assert trace.final_rate > 2.32

    def test_outer_rates_non_decreasing(self, paper_n4, paper_n3,
                                        make_scenario):
        rng = np.random.default_rng(30)
        cases = [(4, paper_n4), (3, paper_n3)]
        cases += [(int(rng.integers(2, 6)), make_scenario(rng))
                  for _ in range(8)]
        for n, scn in cases:
            trace = solve(n, scn)
            rates = [r.rate_after_x for r in trace.outer]
            assert all(b >= a - 1e-9 for a, b in zip(rates, rates[1:]))
            # the w-step is an exact maximizer given x
            for rec, prev in zip(trace.outer[1:], rates):
                assert rec.rate_after_w >= prev - 1e-9

    def test_final_rate_consistency(self, paper_n4):
        trace = solve(4, paper_n4)
        assert trace.final_rate == secrecy_rate(trace.final_x, trace.final_w,
                                                paper_n4)
        assert trace.final_rate == max(
            objective_psi(trace.final_x, trace.final_w, paper_n4), 0.0)

    def test_identical_bob_eve_gives_zero(self):
        scn = Scenario(bob_angle=np.pi / 3, eve_angles=(np.pi / 3,))
        assert solve(3, scn).final_rate == 0.0

    def test_dominates_fpa(self, paper_n4, paper_n3, make_scenario):
        rng = np.random.default_rng(31)
        cases = [(4, paper_n4), (3, paper_n3)]
        cases += [(int(rng.integers(2, 6)), make_scenario(rng))
                  for _ in range(10)]
        for n, scn in cases:
            ma = solve(n, scn).final_rate
            _, fpa = solve_fpa(n, scn)
            assert ma >= fpa - 1e-9

    def test_trace_shape(self, paper_n4):
        trace = solve(4, paper_n4)
        assert len(trace.inner) == trace.n_outer
        assert [r.iteration for r in trace.outer] == \
            list(range(1, trace.n_outer + 1))

    def test_nonconvergence_reported(self, paper_n4):
        cfg = SolveConfig(pga=PgaConfig(max_inner_iters=5),
                          max_outer_iters=1)
        trace = solve(4, paper_n4, cfg)
        assert not trace.converged
        assert trace.n_outer == 1

    def test_custom_start(self, paper_n4):
        from masec import AntennaPositions
        x0 = AntennaPositions.create([0.0, 1.0, 2.0, 3.0], paper_n4)
        trace = solve(4, paper_n4, x0=x0)
        assert trace.final_rate >= secrecy_rate(
            x0, trace.final_w, paper_n4) - 1e-9


class TestSolveFpa:
    def test_paper_n4_near_nulls(self, paper_n4):
        # with four elements the uniform array also steers nulls at the Eves
        w, rate = solve_fpa(4, paper_n4)
        x = initial_positions(4, paper_n4)
        g0 = beam_gain(x, w, paper_n4.bob_angle, paper_n4)
        for theta in paper_n4.eve_angles:
            assert beam_gain(x, w, theta, paper_n4) <= 1e-2 * g0
        assert rate > 0.0

    def test_paper_n3_leaks_and_ma_wins(self, paper_n3):
        w_fpa, _ = solve_fpa(3, paper_n3)
        x_fpa = initial_positions(3, paper_n3)
        trace = solve(3, paper_n3)
        theta1 = paper_n3.eve_angles[0]
        ma_g1 = beam_gain(trace.final_x, trace.final_w, theta1, paper_n3)
        fpa_g1 = beam_gain(x_fpa, w_fpa, theta1, paper_n3)
        ma_g0 = beam_gain(trace.final_x, trace.final_w, paper_n3.bob_angle,
                          paper_n3)
        fpa_g0 = beam_gain(x_fpa, w_fpa, paper_n3.bob_angle, paper_n3)
        assert ma_g1 < fpa_g1
        assert ma_g0 > fpa_g0


class TestSolveConfig:
    @pytest.mark.parametrize("kw", [dict(max_outer_iters=0),
                                    dict(outer_tol=0.0)])
    def test_rejects_nonpositive(self, kw):
        with pytest.raises(ValueError):
            SolveConfig(**kw)
