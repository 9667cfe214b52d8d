"""Parser, evaluator, and dual-number differentiation tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcsol.errors import BoundaryMismatchError, EvalError, ParseError
from qcsol.expr import (
    Dual,
    evaluate,
    free_variables,
    grad,
    grad_fd,
    parse,
    pretty,
)

QUADRANT = (
    "pw[x1 >= 0 & x2 >= 0: x1^2 + x2^2; "
    "x1 <= 0 & x2 >= 0: x2^2; "
    "x1 <= 0 & x2 <= 0: -(x1^2 * x2^2); "
    "x1 >= 0 & x2 <= 0: x1^2]"
)


class TestParseEvaluate:
    def test_polynomial(self):
        f = parse("x1^3 - 2*x1*x2 + 4", 2)
        assert evaluate(f, [2.0, 1.0]) == pytest.approx(8.0)

    def test_ratio(self):
        f = parse("x2/x1", 2)
        assert evaluate(f, [2.0, 1.0]) == pytest.approx(0.5)

    def test_sqrt_abs(self):
        f = parse("sqrt(x1^2 + 4) + abs(x2)", 2)
        assert evaluate(f, [0.0, -3.0]) == pytest.approx(5.0)

    def test_unary_minus_and_precedence(self):
        f = parse("-x1^2", 1)
        assert evaluate(f, [3.0]) == pytest.approx(-9.0)
        g = parse("2 - 3 - 4", 1)
        assert evaluate(g, [0.0]) == pytest.approx(-5.0)

    def test_division_by_zero(self):
        f = parse("1/x1", 1)
        with pytest.raises(EvalError):
            evaluate(f, [0.0])

    def test_free_variables(self):
        assert free_variables(parse("x1 + x3", 3)) == {1, 3}

    def test_parse_error_offset(self):
        with pytest.raises(ParseError) as err:
            parse("x1 + ", 1)
        assert err.value.offset == 5

    def test_variable_out_of_range(self):
        with pytest.raises(ParseError):
            parse("x3", 2)

    def test_unknown_function(self):
        with pytest.raises(ParseError):
            parse("sin(x1)", 1)


class TestPiecewise:
    def test_branch_values(self):
        f = parse(QUADRANT, 2)
        assert evaluate(f, [1.0, 1.0]) == pytest.approx(2.0)
        assert evaluate(f, [-1.0, 1.0]) == pytest.approx(1.0)
        assert evaluate(f, [-1.0, -2.0]) == pytest.approx(-4.0)
        assert evaluate(f, [1.0, -2.0]) == pytest.approx(1.0)

    def test_boundary_agreement(self):
        f = parse(QUADRANT, 2)
        # both branches at x1 = 0 agree, so the value is well defined
        assert evaluate(f, [0.0, 1.5]) == pytest.approx(2.25)
        g = grad(f, [0.0, 1.5])
        assert g == pytest.approx([0.0, 3.0])

    def test_boundary_mismatch_raises(self):
        f = parse("pw[x1 <= 0: 0; x1 >= 0: 1]", 1)
        with pytest.raises(BoundaryMismatchError):
            evaluate(f, [0.0])

    def test_no_branch_applies(self):
        f = parse("pw[x1 <= 0: 0]", 1)
        with pytest.raises(EvalError):
            evaluate(f, [1.0])

    def test_nonlinear_guard_rejected(self):
        with pytest.raises(ParseError):
            parse("pw[x1^2 <= 1: x1]", 1)


class TestGradient:
    def test_ratio_gradient(self):
        f = parse("x2/x1", 2)
        assert grad(f, [1.0, 2.0]) == pytest.approx([-2.0, 1.0])

    def test_sqrt_gradient(self):
        f = parse("sqrt(x1^2 + 4)", 1)
        assert grad(f, [2.0]) == pytest.approx([2.0 / np.sqrt(8.0)])

    def test_matches_finite_differences(self):
        f = parse("-x1 - x2 + sqrt((x1 - x2)^2 + 4)", 2)
        rng = np.random.default_rng(7)
        for _ in range(50):
            x = rng.uniform(-1.4, 1.4, size=2)
            assert grad(f, x) == pytest.approx(grad_fd(f, x), abs=1e-6)

    def test_dual_arithmetic(self):
        d = Dual(3.0, 1.0)
        out = d * d + Dual(2.0, 0.0) / d
        assert out.val == pytest.approx(9.0 + 2.0 / 3.0)
        assert out.dot == pytest.approx(6.0 - 2.0 / 9.0)


SMOOTH = parse("x1^3 - 2*x1*x2 + sqrt(x2^2 + 1)", 2)


@given(
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
)
@settings(max_examples=60, deadline=None)
def test_ad_agrees_with_fd(a, b):
    x = np.array([a, b])
    g = grad(SMOOTH, x)
    scale = 1.0 + float(np.max(np.abs(g)))
    assert np.max(np.abs(g - grad_fd(SMOOTH, x))) <= 1e-5 * scale


ROUND_TRIP_SOURCES = [
    ("x2/x1", 2),
    ("x1^3", 2),
    ("-x1 - x2 + sqrt((x1 - x2)^2 + 4)", 2),
    (QUADRANT, 2),
    ("pw[x1 <= 0: -(x1^2); x1 >= 0 & x1 <= 1: 0; x1 >= 1: (x1 - 1)^2]", 1),
    ("abs(x1) * 2 + 3/x2^4", 2),
]


@pytest.mark.parametrize("source,dim", ROUND_TRIP_SOURCES)
def test_pretty_round_trip(source, dim):
    ast = parse(source, dim)
    assert parse(pretty(ast), dim) == ast
