import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from fracalc import (
    Direction,
    Grid,
    SobolevSpec,
    frac_sobolev_norm,
    gamma,
    gl_derivative,
    reciprocal_gamma,
    rl_derivative,
    rl_integral,
    sample,
)

GRID = Grid(0.0, 1.0, 512)
orders = st.floats(0.05, 0.95)
coefficients = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)
directions = st.sampled_from(list(Direction))


def _smooth(c0, c1, c2):
    return sample(lambda x: c0 * np.exp(x) + c1 * np.sin(3 * x) + c2 * x**2, GRID)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 30.0))
def test_gamma_recurrence(x):
    assert math.isclose(gamma(x + 1.0), x * gamma(x), rel_tol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 0.99))
def test_gamma_reflection(x):
    assert math.isclose(gamma(x) * gamma(1.0 - x), math.pi / math.sin(math.pi * x), rel_tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-20.0, 20.0))
def test_reciprocal_gamma_is_reciprocal(x):
    if x > 0 or x != math.floor(x):
        assert math.isclose(reciprocal_gamma(x) * gamma(x), 1.0, rel_tol=1e-12)


@settings(max_examples=25, deadline=None)
@given(orders, directions, coefficients, coefficients, coefficients, coefficients)
def test_linearity(alpha, direction, c0, c1, c2, k):
    f = _smooth(c0, c1, c2)
    g = _smooth(c2, -c0, c1)
    for op in (rl_integral, rl_derivative, gl_derivative):
        lhs = op(k * f + g, alpha, direction).output.filled()
        rhs = (k * op(f, alpha, direction).output + op(g, alpha, direction).output).filled()
        scale = max(1.0, float(np.max(np.abs(rhs))))
        assert np.max(np.abs(lhs - rhs)) <= 1e-9 * scale


@settings(max_examples=25, deadline=None)
@given(orders, coefficients, coefficients, coefficients)
def test_mirror_symmetry(alpha, c0, c1, c2):
    f = _smooth(c0, c1, c2)
    left = rl_integral(f.mirrored(), alpha).output.mirrored().filled()
    right = rl_integral(f, alpha, Direction.Right).output.filled()
    assert np.allclose(left, right, rtol=1e-12, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(orders, orders)
def test_semigroup(sigma, tau):
    f = _smooth(1.0, 0.5, -0.3)
    twice = rl_integral(rl_integral(f, sigma).output, tau).output.filled()
    once = rl_integral(f, sigma + tau).output.filled()
    assert np.max(np.abs(twice - once)) <= 1e-4 * np.max(np.abs(once))


@settings(max_examples=25, deadline=None)
@given(orders, coefficients, coefficients, st.floats(-4.0, 4.0))
def test_norm_homogeneity(alpha, c1, c2, k):
    u = sample(lambda x: c1 * np.sin(np.pi * x) + c2 * x * np.exp(x), GRID)
    spec = SobolevSpec(alpha, 2.0)
    assert math.isclose(frac_sobolev_norm(k * u, spec), abs(k) * frac_sobolev_norm(u, spec),
                        rel_tol=1e-10, abs_tol=1e-12)
