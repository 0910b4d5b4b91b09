import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ossbsim import DomainError, bessel_j, bessel_j_orders
from oracles import J1_AT_1_8412, bessel_series


def test_trivial_values():
    assert bessel_j(0, 0) == 1.0
    assert bessel_j(3, 0) == 0.0
    assert bessel_j(-5, 0) == 0.0


def test_series_oracle_value():
    assert bessel_series(1, "1.8412") == pytest.approx(J1_AT_1_8412, abs=1e-15)
    assert bessel_j(1, 1.8412) == pytest.approx(0.58187, abs=1e-4)
    assert bessel_j(1, 1.8412) == pytest.approx(J1_AT_1_8412, abs=1e-13)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 40, 64])
def test_against_mpmath_over_envelope(n):
    xs = np.concatenate([np.linspace(0, 32, 257), [11.999, 12.0, 12.001, 31.99]])
    worst = max(abs(bessel_j(n, x) - float(mpmath.besselj(n, x))) for x in xs)
    assert worst < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(-64, 64), st.floats(0, 32))
def test_random_points_accuracy(n, x):
    assert bessel_j(n, x) == pytest.approx(float(mpmath.besselj(n, x)), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 64), st.floats(0, 32))
def test_negative_order_reflection_is_exact(n, x):
    assert bessel_j(-n, x) == (-1) ** n * bessel_j(n, x)


@settings(max_examples=300, deadline=None)
@given(st.integers(-63, 63), st.floats(0.05, 32))
def test_three_term_recurrence(n, x):
    lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x)
    rhs = 2 * n / x * bessel_j(n, x)
    assert lhs == pytest.approx(rhs, abs=1e-10)


@pytest.mark.parametrize("x", [0.0, 0.54, 1.8412, 7.5, 12.0, 25.0, 32.0])
def test_orders_array_matches_scalar(x):
    arr = bessel_j_orders(30, x)
    assert arr.shape == (61,)
    for k, n in enumerate(range(-30, 31)):
        assert arr[k] == pytest.approx(bessel_j(n, x), abs=1e-14)


@pytest.mark.parametrize("n,x", [(65, 1.0), (-65, 1.0), (0, -0.1), (0, 32.5), (3, math.nan)])
def test_out_of_envelope(n, x):
    with pytest.raises(DomainError):
        bessel_j(n, x)
