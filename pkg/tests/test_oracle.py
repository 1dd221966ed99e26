import math

import numpy as np
import pytest

from fracalc import Direction, gamma
from fracalc.oracle import (
    NO_CLOSED_FORM,
    OracleCase,
    OracleKind,
    Query,
    catalog_json,
    power_law_derivative,
    power_law_integral,
    reference,
    step_weak_derivative,
)

x = np.linspace(0.05, 1.0, 20)


def test_kernel_exponent_is_annihilated():
    assert np.all(power_law_derivative(-0.7, 0.3)(x) == 0.0)


def test_constant_derivative():
    expected = x**-0.5 / math.sqrt(math.pi)
    assert np.allclose(power_law_derivative(0.0, 0.5)(x), expected, rtol=1e-13)


def test_square_root_derivative_is_constant():
    assert np.allclose(power_law_derivative(0.5, 0.5)(x), 0.8862269255, rtol=1e-10)


def test_integral_examples():
    assert np.allclose(power_law_integral(0.0, 0.5)(x), x**0.5 / gamma(1.5), rtol=1e-13)
    assert np.allclose(power_law_integral(-0.7, 0.7)(x), gamma(0.3), rtol=1e-13)
    assert np.allclose(power_law_integral(1.0, 1.0)(x), x**2 / 2, rtol=1e-13)


def test_right_direction_mirrors():
    left = power_law_derivative(0.5, 0.3, Direction.Left)(x)
    right = power_law_derivative(0.5, 0.3, Direction.Right)(1.0 - x)
    assert np.allclose(left, right, rtol=1e-13)


def test_alpha_to_one_recovers_derivative():
    mu = 1.7
    near = power_law_derivative(mu, 1.0 - 1e-6)(x)
    assert np.allclose(near, mu * x ** (mu - 1.0), rtol=1e-4)


def test_step_formula():
    assert step_weak_derivative(0.0, 1.0, 0.5)(np.array([0.25]))[0] == pytest.approx(1.1284, abs=1e-4)


def test_step_without_jump_is_constant_formula():
    pts = np.array([-0.5, 0.0, 0.5])
    expected = 2.0 * (pts + 1.0) ** -0.5 / gamma(0.5)
    assert np.allclose(step_weak_derivative(2.0, 2.0, 0.5)(pts), expected, rtol=1e-13)


def test_step_is_infinite_at_the_jump():
    assert np.isinf(step_weak_derivative(0.0, 1.0, 0.5)(np.array([0.0]))[0])


def test_reference_queries():
    constant = OracleCase(OracleKind.Constant, {"c": 2.0})
    assert reference(constant, Query.RLDerivative, 0.5, 0.5) == pytest.approx(1.5958, abs=1e-4)
    kernel = OracleCase(OracleKind.KernelFunction, {"alpha": 0.3})
    assert reference(kernel, Query.RLDerivative, 0.4, 0.3) == 0.0
    gaussian = OracleCase(OracleKind.GaussianLine, {"width": 1.0})
    assert reference(gaussian, Query.RLDerivative, 0.4, 0.3) is NO_CLOSED_FORM


def test_catalog_is_json():
    import json

    assert isinstance(json.loads(catalog_json()), list)
