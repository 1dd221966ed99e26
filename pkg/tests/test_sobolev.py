import math

import numpy as np
import pytest

from fracalc import (
    Direction,
    DomainKind,
    Grid,
    Side,
    SobolevSpec,
    exterior_extension,
    fourier_seminorm,
    frac_sobolev_norm,
    gagliardo_seminorm,
    gamma,
    h_alpha_equivalence_ratio,
    kernel_function,
    lp_norm,
    poincare_ratio,
    pollution_tail,
    sample,
    sobolev_conjugate_check,
    trace,
    trivial_extension,
)
from fracalc.calculus import bump
from fracalc.errors import ExtensionConditionError, PreconditionError
from fracalc.sobolev import (
    holder_quotient,
    pollution_slope,
    sobolev_conjugate,
    step_norm_regime,
)

UNIT = Grid(0.0, 1.0, 2048)


def _zero(grid=UNIT):
    return sample(lambda x: 0.0 * x, grid)


def test_norm_of_zero():
    assert frac_sobolev_norm(_zero(), SobolevSpec(0.5, 2.0)) == 0.0


def test_norm_of_square_root():
    # ||√x||² = 1/2 and D^½ √x = Γ(3/2)
    value = frac_sobolev_norm(sample(np.sqrt, Grid(0.0, 1.0, 4096)), SobolevSpec(0.5, 2.0))
    assert value == pytest.approx(math.sqrt(0.5 + gamma(1.5) ** 2), rel=1e-4)


def test_symmetric_norm_includes_both_sides():
    u = sample(lambda x: np.sin(np.pi * x), UNIT)
    left = frac_sobolev_norm(u, SobolevSpec(0.4, 2.0, Side.Left))
    both = frac_sobolev_norm(u, SobolevSpec(0.4, 2.0, Side.Symmetric))
    assert both > left


def test_spec_validation():
    with pytest.raises(PreconditionError):
        SobolevSpec(0.5, 0.5)
    with pytest.raises(PreconditionError):
        SobolevSpec(-0.1, 2.0)


def test_gagliardo_examples():
    assert gagliardo_seminorm(sample(lambda x: 3.0 + 0 * x, UNIT), 0.25, 2.0) == 0.0
    linear = gagliardo_seminorm(sample(lambda x: x, UNIT), 0.25, 2.0)
    assert linear == pytest.approx(math.sqrt(2.0 / (1.5 * 2.5)), rel=2e-2)
    # σ = 1/2, p = 2 integrates |x - y|^0 over the square
    assert gagliardo_seminorm(sample(lambda x: x, UNIT), 0.5, 2.0) == pytest.approx(1.0, rel=1e-3)


def test_fourier_seminorm_gaussian():
    grid = Grid(-12.0, 12.0, 4096, DomainKind.TruncatedLine)
    u = sample(lambda x: np.exp(-x**2 / 2), grid)
    assert fourier_seminorm(_zero(grid), 0.5) == 0.0
    # with the 1/(2π) Plancherel factor, |ξ| against |û|² = 2π e^{-ξ²} gives 1
    assert fourier_seminorm(u, 0.5) == pytest.approx(1.0, rel=1e-2)
    # s -> 0 recovers the L² norm
    assert fourier_seminorm(u, 1e-6) == pytest.approx(lp_norm(u, 2.0), rel=1e-2)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_plancherel_ratio(alpha):
    grid = Grid(-8.0, 8.0, 4096, DomainKind.TruncatedLine)
    u = sample(lambda x: bump(x, 0.5, 2.0), grid)
    assert h_alpha_equivalence_ratio(u, alpha) == pytest.approx(1.0, abs=2e-2)


def test_trace_of_linear():
    result = trace(sample(lambda x: x, UNIT), SobolevSpec(0.8, 2.0))
    assert result.value == pytest.approx(1.0, abs=1e-12)


def test_trace_of_kernel():
    grid = Grid(0.0, 2.0, 2048)
    result = trace(kernel_function(grid, 0.75), SobolevSpec(0.75, 2.0))
    assert result.value == pytest.approx(2.0 ** -0.25, rel=1e-6)


def test_trace_requires_supercritical_exponent():
    with pytest.raises(PreconditionError):
        trace(sample(lambda x: x, UNIT), SobolevSpec(0.25, 2.0))


def test_poincare_kernel_element():
    result = poincare_ratio(3.0 * kernel_function(UNIT, 0.5), 0.5, 1.0)
    assert result.kernel_element
    assert result.numerator <= 1e-10


def test_poincare_square_root():
    result = poincare_ratio(sample(np.sqrt, Grid(0.0, 1.0, 4096)), 0.5, 2.0)
    assert result.constant == 0.0
    assert result.ratio == pytest.approx(math.sqrt(0.5) / gamma(1.5), rel=1e-3)


def test_conjugate_exponent():
    assert sobolev_conjugate(0.25, 2.0) == 4.0
    with pytest.raises(PreconditionError):
        sobolev_conjugate(0.5, 2.0)


def test_conjugate_scaling_and_zero():
    grid = Grid(-8.0, 8.0, 4096, DomainKind.TruncatedLine)
    u = sample(lambda x: bump(x, 0.0, 1.0), grid)
    assert sobolev_conjugate_check(u, 0.25, 2.0).passed
    with pytest.raises(PreconditionError):
        sobolev_conjugate_check(_zero(grid), 0.25, 2.0)


def test_pollution_tail():
    phi = sample(lambda x: bump(x, 0.5, 0.25), UNIT)
    x = 1.0 + np.linspace(0.5, 50.0, 100)
    tail = np.abs(pollution_tail(phi, 0.5, Direction.Left, x))
    assert np.all(np.diff(tail) < 0.0)
    assert np.all(pollution_tail(_zero(), 0.5, Direction.Left, x) == 0.0)
    slope = pollution_slope(phi, 0.5, Direction.Left, np.geomspace(2.0, 100.0, 30))
    assert slope == pytest.approx(-1.5, rel=5e-2)


def test_pollution_rejects_points_inside_support():
    phi = sample(lambda x: bump(x, 0.5, 0.25), UNIT)
    with pytest.raises(PreconditionError):
        pollution_tail(phi, 0.5, Direction.Left, np.array([0.5]))


def test_holder_quotient_is_finite_for_supercritical():
    u = sample(lambda x: x**0.75, UNIT)
    assert math.isfinite(holder_quotient(u, 0.75, 4.0))


def test_step_regimes():
    assert not step_norm_regime(0.5, 1.0).divergent
    assert step_norm_regime(0.5, 8.0).divergent


def test_trivial_extension():
    u = sample(lambda x: bump(x, 0.5, 0.25), UNIT)
    result = trivial_extension(u, 1.0, SobolevSpec(0.5, 2.0))
    m = (result.extended.grid.n - UNIT.n) // 2
    assert np.array_equal(result.extended.values[m:m + UNIT.n + 1], u.values)
    assert math.isfinite(result.norm_ratio)
    assert trivial_extension(_zero(), 1.0, SobolevSpec(0.5, 2.0)).norm_ratio == 1.0


def test_trivial_extension_ratio_is_stable_under_refinement():
    ratios = []
    for n in (1024, 4096):
        grid = Grid(0.0, 1.0, n)
        u = sample(lambda x: bump(x, 0.5, 0.25), grid)
        ratios.append(trivial_extension(u, 1.0, SobolevSpec(0.5, 2.0)).norm_ratio)
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-2)


def test_exterior_extension_gate():
    one = sample(lambda x: 1.0 + 0 * x, Grid(0.0, 1.0, 512))
    assert math.isfinite(exterior_extension(one, 0.25, 2.0, 8.0).norm_ratio)
    for args, code in (((0.6, 2.0, 8.0), "ALPHA_P"), ((0.25, 2.0, 4.0), "MU_TOO_SMALL")):
        with pytest.raises(ExtensionConditionError) as info:
            exterior_extension(one, *args)
        assert info.value.code == code
