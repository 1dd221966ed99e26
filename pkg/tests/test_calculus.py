import numpy as np
import pytest

from fracalc import (
    Direction,
    DomainKind,
    Grid,
    chain_rule_check,
    ftfc_constant,
    ftfc_reconstruct,
    ibp_residual,
    kernel_function,
    mollifier_commutation,
    product_rule_check,
    sample,
    weak_derivative_verify,
)
from fracalc.calculus import (
    bump,
    endpoint_limit,
    ftfc_round_trip,
    mollify,
    perturbed_candidate,
)
from fracalc.errors import PreconditionError
from fracalc.oracle import step_weak_derivative

UNIT = Grid(0.0, 1.0, 2048)
LINE = Grid(-8.0, 8.0, 2048, DomainKind.TruncatedLine)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("direction", list(Direction))
def test_kernel_constant_is_one(alpha, direction):
    kappa = kernel_function(UNIT, alpha, direction)
    assert ftfc_constant(kappa, alpha, direction) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("func", [np.sqrt, lambda x: 1.0 + 0.0 * x, np.exp])
def test_bounded_functions_have_no_kernel_part(func):
    assert ftfc_constant(sample(func, UNIT), 0.5) == 0.0


def test_scaled_kernel_constant():
    f = 2.5 * kernel_function(UNIT, 0.3) + sample(lambda x: x, UNIT)
    assert ftfc_constant(f, 0.3) == pytest.approx(2.5, rel=1e-4)


def test_reconstruct_kernel():
    kappa = kernel_function(UNIT, 0.6)
    parts = ftfc_reconstruct(kappa, 0.6)
    assert parts.c == pytest.approx(1.0, abs=1e-6)
    assert np.max(np.abs(parts.integral_part.filled())) < 1e-6


def test_reconstruct_zero():
    parts = ftfc_reconstruct(sample(lambda x: 0.0 * x, UNIT), 0.5)
    assert parts.c == 0.0
    assert np.all(parts.kernel_part.filled() == 0.0)
    assert np.all(parts.integral_part.filled() == 0.0)


def test_reconstruct_vanishing_start():
    parts = ftfc_reconstruct(sample(lambda x: np.sin(np.pi * x), UNIT), 0.5)
    assert parts.c == 0.0
    assert parts.residual < 1e-3


def test_round_trip():
    report = ftfc_round_trip(sample(np.exp, UNIT), 0.5)
    assert report.passed and report.residual_norm < 1e-3


def test_endpoint_limit_two_term_model():
    j = np.arange(0, 20, dtype=float)
    values = 3.0 + 0.5 * j**0.4 - 0.2 * j**1.4
    assert endpoint_limit(values) == pytest.approx(3.0, abs=1e-8)


def test_product_rule_constant_psi_is_exact():
    f = sample(lambda x: np.exp(x) * np.sin(2 * x) + 1.0, UNIT)
    report = product_rule_check(f, sample(lambda x: 1.0 + 0.0 * x, UNIT), 0.5, tolerance=1e-10)
    assert report.passed


def test_product_rule_linear_psi_has_no_remainder():
    f = sample(lambda x: np.exp(x) * np.sin(2 * x) + 1.0, UNIT)
    report = product_rule_check(f, sample(lambda x: x, UNIT), 0.5, m=1)
    assert report.passed
    assert report.diagnostics["remainder_norm"] <= 1e-10


@pytest.mark.parametrize("direction", list(Direction))
def test_product_rule_bumps(direction):
    grid = Grid(0.0, 1.0, 4096)
    f = sample(lambda x: bump(x, 0.4, 0.3), grid)
    psi = sample(lambda x: bump(x, 0.6, 0.35), grid)
    assert product_rule_check(f, psi, 0.5, direction).residual_norm <= 1e-3


def test_chain_rule_identity_and_cubic():
    f = sample(lambda x: np.exp(x) * np.sin(2 * x) + 1.0, UNIT)
    assert chain_rule_check(f, lambda v: v, lambda v: 1.0 + 0 * v, 0.5, tolerance=1e-10).passed
    g = sample(lambda x: bump(x, 0.4, 0.3), Grid(0.0, 1.0, 4096))
    assert chain_rule_check(g, lambda v: v**3 - 2 * v, lambda v: 3 * v**2 - 2, 0.5).passed


@pytest.mark.parametrize("direction", list(Direction))
def test_integration_by_parts(direction):
    grid = Grid(0.0, 1.0, 4096)
    f = sample(lambda x: x**2, grid)
    g = sample(lambda x: bump(x, 0.5, 0.3), grid)
    report = ibp_residual(f, g, 0.5, direction)
    assert report.passed
    assert report.diagnostics["integral_form"] <= 1e-6


def test_integration_by_parts_zero():
    f = sample(lambda x: 0.0 * x, UNIT)
    g = sample(lambda x: bump(x, 0.5, 0.3), UNIT)
    assert ibp_residual(f, g, 0.5).residual_norm == 0.0


def test_weak_derivative_of_constant():
    u = sample(lambda x: 2.0 + 0 * x, UNIT)
    v = sample(lambda x: 2.0 * x**-0.5 / np.sqrt(np.pi), UNIT)
    assert weak_derivative_verify(u, v, 0.5).passed
    assert not weak_derivative_verify(u, sample(lambda x: 0 * x, UNIT), 0.5).passed


def test_weak_derivative_of_step():
    grid = Grid(-1.0, 1.0, 4096)
    u = sample(lambda x: np.where(x < 0, 0.5, np.where(x > 0, 2.0, 1.25)), grid)
    v = sample(step_weak_derivative(0.5, 2.0, 0.5), grid)
    assert weak_derivative_verify(u, v, 0.5).passed
    assert not weak_derivative_verify(u, perturbed_candidate(v, u), 0.5).passed


def test_weak_derivative_on_line():
    u = sample(lambda x: 2.0 + 0 * x, LINE)
    assert weak_derivative_verify(u, sample(lambda x: 0 * x, LINE), 0.5).passed


def test_mollified_constant_is_constant_inside():
    f = sample(lambda x: bump(x, 0.0, 6.0) * 0 + 1.0 * (np.abs(x) < 5), LINE)
    g = mollify(f, 0.1)
    inside = np.abs(LINE.x) < 4
    assert np.allclose(g.values[inside], 1.0, atol=1e-12)


def test_mollifier_commutation():
    f = sample(lambda x: np.clip(1 - ((x - 0.3) / 1.5) ** 2, 0, None) ** 2, LINE)
    assert mollifier_commutation(f, 0.5, 0.1).passed


def test_mollifier_needs_resolution():
    coarse = Grid(-8.0, 8.0, 64, DomainKind.TruncatedLine)
    with pytest.raises(PreconditionError):
        mollify(sample(lambda x: bump(x, 0.0, 2.0), coarse), 0.1)


@pytest.mark.parametrize("alpha,func", [(0.6, np.exp), (0.4, lambda x: np.cos(x) + x)])
def test_kernel_times_smooth(alpha, func):
    grid = Grid(0.0, 1.0, 256)
    f = kernel_function(grid, alpha) * sample(func, grid)
    parts = ftfc_reconstruct(f, alpha)
    assert parts.c == pytest.approx(1.0, abs=1e-4)
    assert parts.residual < 1e-4
