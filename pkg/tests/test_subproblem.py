import numpy as np
import pytest

import ivmopt.subproblem as subproblem
from ivmopt.ivf import psi_from_matrices
from ivmopt.problems import registry, sample_start
from ivmopt.subproblem import (QpError, brute_force_critical_check,
                               is_pareto_critical, solve_direction,
                               solve_direction_from_matrices)

from conftest import (degenerate_objective, grid_search_direction,
                      make_problem, quadratic, single_quadratic_problem)

# frozen n=2 instances whose grid-search optimum certifies the QP within the
# stated tolerances (minimizers sit in smooth regions or on axis kinks the
# 1e-3 grid contains exactly)
INTERVAL_GRID_INSTANCES = [
    (np.array([[0.778, -0.427], [0.548, -0.026]]),
     np.array([[1.152, 0.345], [1.267, 0.037]])),
    (np.array([[-0.51, -0.63], [0.811, 0.108]]),
     np.array([[-0.213, 0.037], [1.09, 0.653]])),
]


class TestForcedSolutions:
    def test_single_smooth_objective_gives_negative_gradient(self):
        problem = single_quadratic_problem([0.0, 0.0], [0.5, 0.5])
        sol = solve_direction(problem, np.array([1.0, 0.0]))
        np.testing.assert_allclose(sol.v, [-1.0, 0.0], atol=1e-8)
        assert sol.xi == pytest.approx(-0.5, abs=1e-8)

    def test_opposite_gradients_force_zero(self):
        f1, g1 = quadratic([-1.0], [0.5])
        f2, g2 = quadratic([1.0], [0.5])
        problem = make_problem([degenerate_objective(f1, g1),
                                degenerate_objective(f2, g2)], n=1)
        sol = solve_direction(problem, np.array([0.0]))
        np.testing.assert_allclose(sol.v, [0.0], atol=1e-10)
        assert abs(sol.xi) <= 1e-10

    @pytest.mark.parametrize("glo,ghi", [
        (np.array([[-0.947, 0.158], [-1.189, -0.084]]), None),
        (np.array([[1.141, 0.719], [0.232, -0.419]]), None),
        (np.array([[-0.705, -0.137], [-0.533, 0.9]]), None),
    ])
    def test_degenerate_biobjective_matches_grid_search(self, glo, ghi):
        ghi = glo if ghi is None else ghi
        sol = solve_direction_from_matrices(glo, ghi)
        v_grid, _ = grid_search_direction(glo, ghi)
        assert np.abs(sol.v - v_grid).max() <= 2e-3

    @pytest.mark.parametrize("glo,ghi", INTERVAL_GRID_INSTANCES)
    def test_interval_biobjective_matches_grid_search(self, glo, ghi):
        sol = solve_direction_from_matrices(glo, ghi)
        v_grid, val_grid = grid_search_direction(glo, ghi)
        assert np.abs(sol.v - v_grid).max() <= 2e-3
        assert abs(sol.xi - val_grid) <= 1e-5


class TestSolutionInvariants:
    def _random_points(self, count_per_problem, rng):
        for spec in registry():
            for _ in range(count_per_problem):
                seed = int(rng.integers(0, 2 ** 62))
                yield spec, sample_start(spec, seed)

    def test_lemma_style_invariants(self, rng):
        for spec, x in self._random_points(8, rng):
            sol = solve_direction(spec.ivmop, x)
            vnorm = float(np.linalg.norm(sol.v))
            assert sol.xi <= 1e-10
            # value consistency with its own definition
            from ivmopt.ivf import gradient_matrices
            glo, ghi = gradient_matrices(spec.ivmop, x)
            psi_v = psi_from_matrices(glo, ghi, sol.v)
            assert abs(sol.xi - (psi_v + 0.5 * vnorm ** 2)) <= 1e-8
            assert sol.tau >= psi_v - 1e-8
            # certificate iff direction vanishes (the exact identity
            # xi = -|v|^2/2 sets the forward constant at sqrt(2e-8))
            if abs(sol.xi) <= 1e-8:
                assert vnorm <= np.sqrt(2e-8) * (1 + 1e-9)
            if vnorm <= 1e-4:
                assert abs(sol.xi) <= 1e-8
            if sol.xi < -1e-8:
                assert psi_v < 0.0
                assert psi_v < -0.5 * vnorm ** 2 + 1e-8
                assert psi_v <= -vnorm ** 2 + 1e-8

    def test_degenerate_reduction_to_steepest_descent(self, rng):
        # zero-width objectives collapse the QP to the classical subproblem:
        # the returned direction must be at least as good as every point of a
        # dense grid (argmin proximity is asserted on the frozen instances,
        # where the minimizer geometry makes the grid certificate tight)
        f1, g1 = quadratic([1.0, 0.0], [1.0, 1.5])
        f2, g2 = quadratic([-1.0, 0.5], [2.0, 0.5])
        problem = make_problem([degenerate_objective(f1, g1),
                                degenerate_objective(f2, g2)], n=2)
        for _ in range(5):
            x = rng.normal(0, 1.0, 2)
            sol = solve_direction(problem, x)
            glo = np.vstack([g1(x), g2(x)])
            v_grid, val_grid = grid_search_direction(glo, glo)
            classical = max(float(glo[0] @ sol.v), float(glo[1] @ sol.v))
            val_solver = classical + 0.5 * float(sol.v @ sol.v)
            assert val_solver <= val_grid + 1e-12
            assert np.abs(sol.v - v_grid).max() <= np.sqrt(
                2.0 * (val_grid - val_solver)) + 1e-6


class TestCriticalityPredicates:
    def test_critical_at_minimizer(self):
        problem = single_quadratic_problem([0.0, 0.0], [0.5, 0.5])
        assert is_pareto_critical(problem, np.zeros(2), eps=1e-6)
        assert brute_force_critical_check(problem, np.zeros(2),
                                          grid_step=2 * np.pi / 720)

    def test_noncritical_away_from_minimizer(self):
        problem = single_quadratic_problem([0.0, 0.0], [0.5, 0.5])
        x = np.array([1.0, 0.0])
        assert not is_pareto_critical(problem, x, eps=1e-6)
        assert not brute_force_critical_check(problem, x,
                                              grid_step=2 * np.pi / 720)

    def test_opposite_gradient_point_is_critical(self):
        f1, g1 = quadratic([-1.0], [0.5])
        f2, g2 = quadratic([1.0], [0.5])
        problem = make_problem([degenerate_objective(f1, g1),
                                degenerate_objective(f2, g2)], n=1)
        assert is_pareto_critical(problem, np.zeros(1), eps=1e-6)
        assert brute_force_critical_check(problem, np.zeros(1), grid_step=1.0)

    def test_eps_must_be_positive(self):
        problem = single_quadratic_problem([0.0])
        with pytest.raises(ValueError):
            is_pareto_critical(problem, np.zeros(1), eps=0.0)

    def test_direction_counts(self):
        from ivmopt.subproblem import _unit_directions
        assert _unit_directions(1, 0.1).shape == (2, 1)
        assert _unit_directions(2, 2 * np.pi / 720).shape == (720, 2)
        assert _unit_directions(3, np.sqrt(4 * np.pi / 720)).shape == (720, 3)
        with pytest.raises(ValueError):
            _unit_directions(4, 0.1)

    def test_direction_vectors_are_unit(self):
        from ivmopt.subproblem import _unit_directions
        for n, step in ((2, 2 * np.pi / 720), (3, np.sqrt(4 * np.pi / 720))):
            dirs = _unit_directions(n, step)
            np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0,
                                       atol=1e-12)


class TestErrors:
    def test_dimension_mismatch(self):
        problem = single_quadratic_problem([0.0, 0.0])
        with pytest.raises(ValueError, match="dimension"):
            solve_direction(problem, np.zeros(3))

    def test_nonconverged_kernel_raises(self, monkeypatch):
        class FakeKernel:
            @staticmethod
            def solve_qp(glo, ghi, kkt_tol=1e-10, max_iter=None):
                from ivmopt._qp_py import QpResult
                return QpResult(v=np.zeros(glo.shape[1]), u=np.zeros(glo.shape[1]),
                                tau=0.0, kkt_residual=1.0, iterations=7,
                                converged=False)

        monkeypatch.setattr(subproblem, "_kernel", FakeKernel)
        problem = single_quadratic_problem([0.0, 0.0])
        with pytest.raises(QpError, match="did not converge"):
            solve_direction(problem, np.ones(2))
