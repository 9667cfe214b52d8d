"""Greenberg-Pierskalla and Martinez-Legaz subdifferential routes."""

import pytest

from qcsol.errors import DimensionError
from qcsol.registry import get_example
from qcsol.subdiff import (
    MLPair,
    default_gp_candidates,
    default_ml_pairs,
    gp_member,
    gp_solution_check,
    ml_member_1d,
    ml_solution_check_1d,
)


@pytest.fixture()
def quadrant():
    return get_example("ex2_4")


@pytest.fixture()
def flat():
    return get_example("ex4_1")


class TestGreenbergPierskalla:
    def test_member_at_origin(self, quadrant):
        f = quadrant.problem.objective
        w = quadrant.problem.domain_window
        assert gp_member(f, (0.0, 0.0), (1.0, 0.0), w)
        # pointing into the quadrant where f goes negative: not a subgradient
        assert not gp_member(f, (0.0, 0.0), (-1.0, 0.0), w)

    def test_resolution_validation(self, quadrant):
        with pytest.raises(ValueError):
            gp_member(quadrant.problem.objective, (0.0, 0.0), (1.0, 0.0),
                      quadrant.problem.domain_window, resolution=2)

    def test_candidates_include_units_and_gradients(self, quadrant):
        cands = default_gp_candidates(
            quadrant.problem.objective, (0.0, 0.0), (1.0, 1.0), 2
        )
        assert any(tuple(c) == (1.0, 0.0) for c in cands)
        assert any(tuple(c) == (0.0, 1.0) for c in cands)

    def test_solution_check(self, quadrant):
        p, xbar = quadrant.problem, quadrant.anchor
        assert gp_solution_check(p, xbar, (0.0, -1.0))
        assert not gp_solution_check(p, xbar, (1.0, 1.0))

    def test_shared_grid_gives_same_answer(self, quadrant):
        from qcsol.subdiff import _grid_values

        p, xbar = quadrant.problem, quadrant.anchor
        grid = _grid_values(p.objective, p.domain_window, 21)
        assert gp_solution_check(p, xbar, (0.0, -1.0), _grid=grid)


class TestMartinezLegaz:
    def test_member_goldens(self, flat):
        f = flat.problem.objective
        w = flat.problem.domain_window
        assert ml_member_1d(f, 0.5, MLPair(1.0, 0.4), w)
        assert ml_member_1d(f, 1.5, MLPair(1.0, 1.5), w)
        assert not ml_member_1d(f, 1.5, MLPair(1.0, 1.0), w)
        # v*x < t fails the pairing condition outright
        assert not ml_member_1d(f, 0.5, MLPair(1.0, 0.6), w)

    def test_default_pairs_cover_zero_threshold(self, flat):
        pairs = default_ml_pairs(flat.problem.domain_window)
        assert any(p.t == 0.0 for p in pairs)
        assert all(p.v > 0 for p in pairs)

    def test_solution_check_m2(self, flat):
        p = flat.problem
        assert ml_solution_check_1d(p, 0.0, 0.5)
        assert ml_solution_check_1d(p, 0.0, 1.0)
        assert not ml_solution_check_1d(p, 0.0, 1.5)

    def test_solution_check_m1(self, flat):
        p = flat.problem
        assert ml_solution_check_1d(p, 0.0, 0.5, form="M1")
        assert not ml_solution_check_1d(p, 0.0, 1.5, form="M1")

    def test_rejects_higher_dimensions(self, quadrant):
        with pytest.raises(DimensionError):
            ml_solution_check_1d(quadrant.problem, 0.0, 0.5)
