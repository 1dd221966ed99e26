import math

import numpy as np
import pytest

from fracalc import (
    DomainKind,
    Grid,
    SampledFunction,
    gamma,
    gl_weights,
    lp_norm,
    make_uniform_grid,
    reciprocal_gamma,
    sample,
)
from fracalc.errors import PreconditionError


def test_grid_nodes():
    grid = make_uniform_grid(0, 1, 4)
    assert np.array_equal(grid.x, [0.0, 0.25, 0.5, 0.75, 1.0])


def test_line_grid_spacing():
    grid = make_uniform_grid(-8, 8, 1024, DomainKind.TruncatedLine)
    assert grid.h == 0.015625


@pytest.mark.parametrize("args", [(1.0, 0.0, 4), (0.0, 1.0, 1), (0.0, math.inf, 4)])
def test_grid_rejects_bad_input(args):
    with pytest.raises(PreconditionError):
        Grid(*args)


def test_grid_round_trip():
    grid = Grid(-1.0, 2.0, 10, DomainKind.TruncatedLine)
    assert Grid.from_dict(grid.to_dict()) == grid


def test_gamma_known_values():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
    assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)


@pytest.mark.parametrize("x", [0.1, 0.37, 1.5, 7.25, 30.0, -1.3])
def test_gamma_matches_math(x):
    assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_reciprocal_gamma_at_poles():
    assert reciprocal_gamma(0.0) == 0.0
    assert np.all(reciprocal_gamma(np.array([0.0, -1.0, -2.0])) == 0.0)


def test_gamma_pole_raises():
    with pytest.raises(PreconditionError):
        gamma(-2.0)


def test_gl_weights():
    assert np.array_equal(gl_weights(0.5, 0), [1.0])
    assert np.allclose(gl_weights(0.5, 2), [1.0, -0.5, -0.125], rtol=0, atol=1e-15)


def test_gl_weight_partial_sums_decrease_to_zero():
    partial = np.cumsum(gl_weights(0.4, 5000))
    assert np.all(partial > 0.0)
    assert np.all(np.diff(partial) <= 0.0)
    # the tail sum decays like k^-α / Γ(1 - α)
    assert partial[-1] == pytest.approx(5000**-0.4 / math.gamma(0.6), rel=1e-3)


def test_lp_norm_examples():
    grid = Grid(0.0, 1.0, 1024)
    assert lp_norm(sample(lambda x: 1.0 + 0 * x, grid), 2.0) == pytest.approx(1.0)
    assert lp_norm(sample(lambda x: x, grid), 2.0) == pytest.approx(1 / math.sqrt(3), rel=1e-6)
    for p in (1.0, 2.0, math.inf):
        assert lp_norm(sample(lambda x: 0 * x, grid), p) == 0.0


def test_sample_excludes_singular_nodes():
    grid = Grid(0.0, 1.0, 8)
    f = sample(lambda x: x**-0.5, grid)
    assert not f.mask[0] and f.mask[1:].all()
    assert f.filled()[0] == 0.0


def test_json_round_trip():
    grid = Grid(0.0, 1.0, 8)
    f = sample(lambda x: x**-0.5, grid)
    g = SampledFunction.from_json(f.to_json())
    assert g.grid == f.grid
    assert np.array_equal(g.mask, f.mask)
    assert np.array_equal(g.filled(), f.filled())


def test_csv_has_plain_floats():
    f = sample(lambda x: x, Grid(0.0, 1.0, 4))
    text = f.to_csv()
    assert "np." not in text
    assert "0.25,0.25" in text


def test_arithmetic_requires_same_grid():
    f = sample(lambda x: x, Grid(0.0, 1.0, 4))
    g = sample(lambda x: x, Grid(0.0, 1.0, 8))
    with pytest.raises(PreconditionError):
        f + g


def test_mirror_is_involution():
    f = sample(lambda x: np.exp(x), Grid(0.0, 1.0, 16))
    assert np.array_equal(f.mirrored().mirrored().values, f.values)
