r"""Discrete fractional integrals and derivatives.

All finite-interval schemes are written for the left direction on a uniform
grid and mapped to the right direction by reflecting about the midpoint, so
left/right mirror symmetry holds exactly.

The integral uses product quadrature: the samples are replaced by their
piecewise-linear interpolant, which is then integrated exactly against the
kernel :math:`(x - y)^{\sigma - 1} / \Gamma(\sigma)`. The derivatives use the
absolutely-continuous representation

.. math::

    D^\alpha f(x) = \frac{f(a)}{\Gamma(1 - \alpha)} (x - a)^{-\alpha}
        + I^{1 - \alpha} f'(x),

where ``f'`` comes from second-order finite differences and the integral from
the same product quadrature. Non-smooth or singular behaviour at the initial
endpoint is fitted by a short power-law expansion whose image under the
operator is added in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from fracalc.core import (
    Direction,
    DomainKind,
    Family,
    Grid,
    SampledFunction,
    gamma,
    reciprocal_gamma,
    gl_weights,
)
from fracalc.errors import (
    ImaginaryResidueError,
    MissingBoundaryValueError,
    PreconditionError,
    TruncationUnsafeError,
)

#: fraction of nodes at each end of a truncated line that must have decayed
DECAY_WINDOW_FRACTION = 0.01
#: allowed size of the samples in the decay window, relative to the maximum
DECAY_TOLERANCE = 1.0e-8
#: allowed imaginary residue of the spectral derivative, relative
IMAGINARY_RESIDUE_TOLERANCE = 1.0e-8
#: zero-padding factor of the spectral derivative
FOURIER_PADDING = 4


class Scheme(enum.Enum):
    ProductTrapezoid = "product-trapezoid"
    GLSum = "gl-sum"
    FFTSpectral = "fft-spectral"
    CompositeCaputo = "composite-caputo"


@dataclass(frozen=True)
class FracSpec:
    """Order, direction and family of a fractional operator."""

    alpha: float
    direction: Direction = Direction.Left
    family: Family = Family.RiemannLiouville

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise PreconditionError(f"order must be positive (got α={self.alpha})")


@dataclass(frozen=True)
class OperatorResult:
    output: SampledFunction
    scheme: Scheme
    estimated_order: float | None = None

    def to_json_dict(self) -> dict:
        data = self.output.to_json_dict()
        data["scheme"] = self.scheme.value
        data["estimated_order"] = self.estimated_order
        return data


# {{{ checks


def _check_order(alpha: float, name: str, upper: float = 1.0) -> None:
    if not (math.isfinite(alpha) and 0.0 < alpha < upper):
        raise PreconditionError(f"{name} requires 0<α<{upper:g} (got α={alpha})")


def check_truncation(f: SampledFunction) -> None:
    """Require decay at both ends of a truncated-line window."""
    if f.grid.kind is not DomainKind.TruncatedLine:
        return

    values = np.abs(f.filled())
    peak = float(np.max(values))
    if peak == 0.0:
        return

    k = max(1, math.ceil(DECAY_WINDOW_FRACTION * values.size))
    edge = max(float(np.max(values[:k])), float(np.max(values[-k:])))
    if edge > DECAY_TOLERANCE * peak:
        raise TruncationUnsafeError(
            f"function has not decayed at the window ends "
            f"(edge/max = {edge / peak:.3e} > {DECAY_TOLERANCE:g})")


def _check_interior(f: SampledFunction) -> None:
    if any(0 < i < f.grid.n for i in f.excluded):
        raise PreconditionError(
            "excluded nodes are only supported at the interval endpoints")


# }}}


# {{{ weights


def _power_second_difference(k: np.ndarray, q: float) -> np.ndarray:
    """(k + 1)^q - 2 k^q + (k - 1)^q for k >= 1, without cancellation."""
    inv = 1.0 / k
    with np.errstate(divide="ignore"):
        # log1p(-1) = -inf at k = 1 gives the correct expm1(-inf) = -1
        return k**q * (np.expm1(q * np.log1p(inv)) + np.expm1(q * np.log1p(-inv)))


def _integral_weights(n: int, sigma: float) -> tuple[np.ndarray, np.ndarray]:
    """Toeplitz weights and first-node weights of the product trapezoid rule
    (both without the common factor h^σ / Γ(σ + 2))."""
    k = np.arange(n + 1, dtype=np.float64)
    toeplitz = np.empty(n + 1)
    toeplitz[0] = 1.0
    toeplitz[1:] = _power_second_difference(k[1:], sigma + 1.0)

    first = np.zeros(n + 1)
    first[1:] = (k[1:] - 1.0) ** (sigma + 1.0) - (k[1:] - 1.0 - sigma) * k[1:] ** sigma
    return toeplitz, first


def _integral_left(v: np.ndarray, h: float, sigma: float) -> np.ndarray:
    n = v.size - 1
    toeplitz, first = _integral_weights(n, sigma)

    out = np.zeros(n + 1)
    out[1:] = np.convolve(toeplitz[:n], v[1:])[:n] + first[1:] * v[0]
    return h**sigma * reciprocal_gamma(sigma + 2.0) * out


def _stencil_left(v: np.ndarray, h: float, alpha: float) -> np.ndarray:
    """I^{1-α} of the second-order finite-difference derivative."""
    return _integral_left(np.gradient(v, h, edge_order=2), h, 1.0 - alpha)


# }}}


# {{{ singular endpoint expansion


@dataclass(frozen=True)
class EndpointExpansion:
    r"""Leading behaviour :math:`c_0 t^\beta + c_1 t^{\beta + 1} + e + g t`
    of samples near an excluded initial endpoint, with ``t = x - a``."""

    exponent: float
    c0: float
    c1: float
    value: float

    def singular_part(self, t: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return self.c0 * t**self.exponent + self.c1 * t ** (self.exponent + 1.0)

    def integral(self, t: np.ndarray, sigma: float) -> np.ndarray:
        """Exact RL integral of the singular part (σ > 0)."""
        beta = self.exponent
        # the kernel function integrated to a constant: keep t^0 = 1 at t = 0
        leading = 0.0 if abs(beta + sigma) < 1.0e-12 else beta + sigma
        with np.errstate(divide="ignore"):
            return (self.c0 * gamma(beta + 1.0) * reciprocal_gamma(beta + 1.0 + sigma)
                    * t**leading
                    + self.c1 * gamma(beta + 2.0) * reciprocal_gamma(beta + 2.0 + sigma)
                    * t ** (beta + 1.0 + sigma))

    def derivative(self, t: np.ndarray, alpha: float) -> np.ndarray:
        """Exact RL derivative of the singular part (0 < α < 1)."""
        beta = self.exponent
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.c0 * gamma(beta + 1.0) * reciprocal_gamma(beta + 1.0 - alpha)
                    * t ** (beta - alpha)
                    + self.c1 * gamma(beta + 2.0) * reciprocal_gamma(beta + 2.0 - alpha)
                    * t ** (beta + 1.0 - alpha))


#: fitted singular exponents this close to the kernel exponent are snapped to it
KERNEL_SNAP_TOLERANCE = 1.0e-3

#: bounded endpoint behaviour t^β is treated as non-smooth only below this β
SMOOTH_EXPONENT_THRESHOLD = 0.95


def _singular_mismatch(v: np.ndarray, beta: float) -> float:
    """Error at node 5 of the expansion with exponent *beta* fitted on nodes 1..4."""
    s = np.arange(1.0, 5.0)
    basis = np.stack([s**beta, s ** (beta + 1.0), np.ones_like(s), s], axis=1)
    c = np.linalg.solve(basis, v[1:5])
    return float(c[0] * 5.0**beta + c[1] * 5.0 ** (beta + 1.0) + c[2] + 5.0 * c[3] - v[5])


_SINGULAR_SCAN = np.linspace(-0.995, -0.005, 199)


def estimate_singular_exponent(v: np.ndarray) -> float | None:
    """Exponent of an integrable power-law singularity at an excluded node 0.

    A first estimate from nodes 1, 2 and 4 (the differences cancel an
    additive constant) is refined by requiring the full expansion fitted on
    nodes 1..4 to reproduce node 5; of several such exponents the one
    closest to the first estimate wins. Returns ``None`` when the samples
    do not look like a power law.
    """
    if v.size < 6:
        return None
    d1 = v[2] - v[1]
    d2 = v[4] - v[2]
    if d1 == 0.0 or not d2 / d1 > 0.0:
        return None
    guess = math.log2(d2 / d1)
    if -1.0 < guess < 0.0 and (abs(_singular_mismatch(v, guess))
                               <= 1.0e-13 * float(np.max(np.abs(v[1:6])))):
        return guess

    scan = [_singular_mismatch(v, beta) for beta in _SINGULAR_SCAN]
    roots = [
        brentq(lambda beta: _singular_mismatch(v, beta),
               _SINGULAR_SCAN[i], _SINGULAR_SCAN[i + 1])
        for i in range(len(scan) - 1)
        if scan[i] == 0.0 or np.sign(scan[i]) != np.sign(scan[i + 1])
    ]
    if not roots:
        return guess
    return min(roots, key=lambda r: abs(r - guess))


def estimate_bounded_exponent(v: np.ndarray) -> float | None:
    """Exponent of a non-smooth term t^β at a finite node 0.

    Uses nodes 0, 1, 2 and 4; the second differences ``v(2k) - 2 v(k) + v(0)``
    cancel both the constant and the linear term.
    """
    if v.size < 5:
        return None
    e1 = v[2] - 2.0 * v[1] + v[0]
    e2 = v[4] - 2.0 * v[2] + v[0]
    if e1 == 0.0 or not e2 / e1 > 0.0:
        return None
    return math.log2(e2 / e1)


def fit_endpoint_expansion(
    v: np.ndarray, h: float, exponent: float | None = None, *, bounded: bool = False
) -> EndpointExpansion | None:
    """Fit the leading non-smooth terms at node 0.

    With ``bounded=False`` node 0 is excluded and a singular exponent in
    ``(-1, 0)`` is expected; otherwise node 0 is finite and an exponent in
    ``(0, 1)`` marks a non-smooth start. The exponent is estimated from the
    samples unless given. Returns ``None`` when no such term is present.
    """
    if v.size < 9:
        return None

    if bounded:
        beta = estimate_bounded_exponent(v) if exponent is None else exponent
        if beta is None or not 0.0 < beta < SMOOTH_EXPONENT_THRESHOLD:
            return None
    else:
        beta = estimate_singular_exponent(v) if exponent is None else exponent
        if beta is None or not -1.0 < beta < 0.0:
            return None

    s = np.arange(1.0, 5.0)
    if bounded:
        basis = np.stack([s**beta, s ** (beta + 1.0), s, s**2], axis=1)
        coeffs = np.linalg.solve(basis, v[1:5] - v[0])
        value = v[0]
    else:
        basis = np.stack([s**beta, s ** (beta + 1.0), np.ones_like(s), s], axis=1)
        coeffs = np.linalg.solve(basis, v[1:5])
        value = coeffs[2]

    return EndpointExpansion(
        exponent=beta,
        c0=coeffs[0] * h ** (-beta),
        c1=coeffs[1] * h ** (-beta - 1.0),
        value=value)


def _extrapolate_start(v: np.ndarray) -> float:
    return 3.0 * v[1] - 3.0 * v[2] + v[3]


# }}}


# {{{ left-direction kernels


@dataclass(frozen=True)
class _Prepared:
    values: np.ndarray
    expansion: EndpointExpansion | None
    terminal_excluded: bool


def _prepare_left(
    f: SampledFunction,
    *,
    boundary_value: float | None = None,
    exponent: float | None = None,
    derivative: bool = False,
    kernel_exponent: float | None = None,
) -> _Prepared:
    """Regularize the samples near the initial endpoint.

    An excluded start is fitted by the singular expansion; an included one
    by the bounded expansion, which is kept only if the samples show a
    non-smooth power. A fitted singular exponent within
    ``KERNEL_SNAP_TOLERANCE`` of *kernel_exponent*, the exponent the
    operator maps to a constant or to zero, is snapped to it. The returned
    values have the fitted terms removed; the caller adds back their exact
    image under the operator.
    """
    _check_interior(f)

    n = f.grid.n
    v = f.filled()
    terminal = n in f.excluded
    if terminal:
        v[n] = 3.0 * v[n - 1] - 3.0 * v[n - 2] + v[n - 3]

    expansion = None
    if boundary_value is not None and 0 in f.excluded:
        v[0] = float(boundary_value)
    elif 0 in f.excluded:
        expansion = fit_endpoint_expansion(v, f.grid.h, exponent)
        if (expansion is not None and exponent is None and kernel_exponent is not None
                and abs(expansion.exponent - kernel_exponent) < KERNEL_SNAP_TOLERANCE):
            expansion = fit_endpoint_expansion(v, f.grid.h, kernel_exponent)
        if expansion is None:
            if derivative:
                raise MissingBoundaryValueError(
                    "the initial endpoint sample is excluded and bounded; "
                    "supply boundary_value")
            v[0] = _extrapolate_start(v)
    else:
        expansion = fit_endpoint_expansion(v, f.grid.h, exponent, bounded=True)

    if expansion is not None:
        v[1:] = v[1:] - expansion.singular_part(f.grid.x[1:] - f.grid.a)
        v[0] = expansion.value

    return _Prepared(v, expansion, terminal)


def _rl_integral_left(
    f: SampledFunction, sigma: float, exponent: float | None
) -> SampledFunction:
    grid = f.grid
    prep = _prepare_left(f, exponent=exponent, kernel_exponent=-sigma if sigma < 1.0 else None)
    out = _integral_left(prep.values, grid.h, sigma)

    excluded = set()
    if prep.expansion is not None:
        t = grid.x - grid.a
        with np.errstate(divide="ignore", invalid="ignore"):
            singular = prep.expansion.integral(t, sigma)
        out = out + np.where(np.isfinite(singular), singular, 0.0)
        if not np.isfinite(singular[0]):
            excluded.add(0)
    if prep.terminal_excluded:
        excluded.add(grid.n)

    return SampledFunction(grid, out, frozenset(excluded))


def boundary_kernel(grid: Grid, alpha: float, direction: Direction) -> np.ndarray:
    r""":math:`(x - a)^{-\alpha} / \Gamma(1 - \alpha)` (left) or the reflected
    analogue, ``inf`` at the endpoint."""
    t = grid.x - grid.a if direction is Direction.Left else grid.b - grid.x
    with np.errstate(divide="ignore"):
        return t ** (-alpha) * reciprocal_gamma(1.0 - alpha)


def _rl_derivative_left(
    f: SampledFunction,
    alpha: float,
    boundary_value: float | None,
    exponent: float | None,
    *,
    caputo: bool = False,
) -> SampledFunction:
    grid = f.grid
    if caputo and 0 in f.excluded:
        raise MissingBoundaryValueError(
            "Caputo derivative needs a finite sample at the initial endpoint")

    prep = _prepare_left(
        f, boundary_value=boundary_value, exponent=exponent, derivative=True,
        kernel_exponent=alpha - 1.0)
    v = prep.values
    out = _stencil_left(v, grid.h, alpha)

    with np.errstate(divide="ignore", invalid="ignore"):
        if not caputo:
            out = out + v[0] * boundary_kernel(grid, alpha, Direction.Left)
        if prep.expansion is not None:
            out = out + prep.expansion.derivative(grid.x - grid.a, alpha)

    excluded = {0}
    if prep.terminal_excluded:
        excluded.add(grid.n)
    out[0] = 0.0
    return SampledFunction(grid, out, frozenset(excluded))


def _gl_left(f: SampledFunction, alpha: float) -> SampledFunction:
    _check_interior(f)
    if 0 in f.excluded:
        raise PreconditionError("GL sum needs a finite sample at the initial endpoint")

    grid = f.grid
    w = gl_weights(alpha, grid.n)
    v = f.filled()
    out = grid.h ** (-alpha) * np.convolve(w, v)[: grid.n + 1]

    excluded = {0}
    if grid.n in f.excluded:
        excluded.add(grid.n)
    out[0] = 0.0
    return SampledFunction(grid, out, frozenset(excluded))


def _directed(left_op, f: SampledFunction, direction: Direction) -> SampledFunction:
    if direction is Direction.Left:
        return left_op(f)
    return left_op(f.mirrored()).mirrored()


# }}}


# {{{ public operators


def rl_integral(
    f: SampledFunction,
    sigma: float,
    direction: Direction = Direction.Left,
    *,
    endpoint_exponent: float | None = None,
) -> OperatorResult:
    """Riemann-Liouville integral of order *sigma* by product quadrature.

    If the initial-endpoint sample is excluded, the leading power-law terms
    are fitted on the neighbouring nodes and integrated exactly. Their
    exponent is estimated unless *endpoint_exponent* is given.
    """
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise PreconditionError(f"integral order must be positive (got σ={sigma})")
    check_truncation(f)

    out = _directed(
        lambda g: _rl_integral_left(g, sigma, endpoint_exponent), f, direction)
    return OperatorResult(out, Scheme.ProductTrapezoid, 2.0)


def rl_derivative(
    f: SampledFunction,
    alpha: float,
    direction: Direction = Direction.Left,
    boundary_value: float | None = None,
    *,
    endpoint_exponent: float | None = None,
) -> OperatorResult:
    """Riemann-Liouville derivative of order ``0 < alpha < 1``.

    The output excludes the initial endpoint, where the boundary term is
    singular. An excluded initial sample is either replaced by
    *boundary_value* or, if the samples show an integrable power-law
    singularity there, handled by an exact expansion.
    """
    _check_order(alpha, "RL derivative")
    check_truncation(f)

    out = _directed(
        lambda g: _rl_derivative_left(g, alpha, boundary_value, endpoint_exponent),
        f, direction)
    return OperatorResult(out, Scheme.ProductTrapezoid, 2.0)


def caputo_derivative(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left
) -> OperatorResult:
    """Caputo derivative: the RL integral of order ``1 - alpha`` of ``f'``
    (with a minus sign for the right direction)."""
    _check_order(alpha, "Caputo derivative")
    check_truncation(f)

    out = _directed(
        lambda g: _rl_derivative_left(g, alpha, None, None, caputo=True),
        f, direction)
    return OperatorResult(out, Scheme.CompositeCaputo, 2.0)


def weak_caputo(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left
) -> OperatorResult:
    """Weak Caputo derivative: the weak RL derivative minus the boundary
    kernel term. Discretely identical to :func:`caputo_derivative`."""
    return caputo_derivative(f, alpha, direction)


def gl_derivative(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left
) -> OperatorResult:
    r"""Grünwald-Letnikov derivative with step equal to the grid spacing.

    The right direction sums forward, :math:`h^{-\alpha} \sum_k w_k f(x + k h)`,
    so that it converges to the right RL derivative.
    """
    _check_order(alpha, "GL")
    check_truncation(f)

    out = _directed(lambda g: _gl_left(g, alpha), f, direction)
    return OperatorResult(out, Scheme.GLSum, 1.0)


def fourier_symbol(xi: np.ndarray, alpha: float) -> np.ndarray:
    r"""Principal branch :math:`(i \xi)^\alpha = |\xi|^\alpha e^{i \alpha \pi
    \operatorname{sgn}(\xi) / 2}`."""
    return np.abs(xi) ** alpha * np.exp(0.5j * np.pi * alpha * np.sign(xi))


def _periodic_images(f: SampledFunction, alpha: float, period: float) -> np.ndarray:
    r"""Sum over :math:`k \ge 1` of the derivative tail at :math:`x + k P`.

    The discrete transform computes the derivative of the periodized
    function, which adds these images of the slowly decaying right-hand tail
    :math:`-\alpha / \Gamma(1 - \alpha) \int f(z) (x - z)^{-1-\alpha} dz`.
    Summed over the images the kernel becomes a Hurwitz zeta function.
    """
    n = f.grid.n
    h = f.grid.h
    offsets = np.arange(-n, n + 1) * h
    kernel = zeta(1.0 + alpha, 1.0 + offsets / period)

    weights = np.full(n + 1, h)
    weights[0] = weights[-1] = h / 2.0
    images = np.convolve(kernel, weights * f.values)[n: 2 * n + 1]

    return -alpha * reciprocal_gamma(1.0 - alpha) * period ** (-1.0 - alpha) * images


def fourier_derivative(f: SampledFunction, alpha: float) -> OperatorResult:
    """Spectral fractional derivative on a truncated line.

    The samples are zero-padded, multiplied by the principal-branch symbol in
    transform space and transformed back. The wrap-around of the algebraic
    right-hand tail into the window is removed analytically.
    """
    if f.grid.kind is not DomainKind.TruncatedLine:
        raise PreconditionError("the Fourier derivative requires a TruncatedLine grid")
    _check_order(alpha, "Fourier derivative")
    if f.excluded:
        raise PreconditionError("the Fourier derivative needs every sample finite")
    check_truncation(f)

    grid = f.grid
    size = FOURIER_PADDING * (grid.n + 1)
    xi = 2.0 * np.pi * np.fft.fftfreq(size, d=grid.h)

    spectrum = np.fft.fft(f.values, n=size)
    result = np.fft.ifft(fourier_symbol(xi, alpha) * spectrum)[: grid.n + 1]
    result = result - _periodic_images(f, alpha, size * grid.h)

    peak = float(np.max(np.abs(result.real)))
    residue = float(np.max(np.abs(result.imag)))
    if residue > IMAGINARY_RESIDUE_TOLERANCE * max(peak, np.finfo(float).tiny):
        raise ImaginaryResidueError(
            f"imaginary residue {residue:.3e} exceeds "
            f"{IMAGINARY_RESIDUE_TOLERANCE:g} relative; widen the window")

    return OperatorResult(SampledFunction(grid, result.real), Scheme.FFTSpectral)


# }}}


# {{{ dispatch


def differentiate(f: SampledFunction) -> SampledFunction:
    """First derivative by second-order central differences (second-order
    one-sided at the ends of the usable range)."""
    usable = np.flatnonzero(f.mask)
    if usable.size < 3:
        raise PreconditionError("need at least three finite samples to differentiate")
    lo, hi = int(usable[0]), int(usable[-1])
    if hi - lo + 1 != usable.size:
        raise PreconditionError(
            "excluded nodes are only supported at the interval endpoints")

    out = np.zeros(f.grid.n + 1)
    out[lo:hi + 1] = np.gradient(f.values[lo:hi + 1], f.grid.h, edge_order=2)
    return f.with_values(out)


def apply(f: SampledFunction, spec: FracSpec) -> OperatorResult:
    """Apply the operator described by *spec*.

    An order ``m + σ`` with integer ``m >= 1`` is split into the fractional
    part and ``m`` ordinary derivatives. For the RL, GL and Fourier families
    the derivatives act after the fractional operator; for the Caputo
    families they act before it, matching the Caputo definition.
    """
    if spec.family is Family.Fourier and f.grid.kind is not DomainKind.TruncatedLine:
        raise PreconditionError("the Fourier family requires a TruncatedLine grid")

    m = int(math.floor(spec.alpha))
    sigma = spec.alpha - m
    if spec.family is Family.GrunwaldLetnikov and m > 0:
        raise PreconditionError("GL requires 0<α<1")

    def fractional(g: SampledFunction) -> OperatorResult:
        if sigma == 0.0:
            return OperatorResult(g, Scheme.ProductTrapezoid, None)
        if spec.family is Family.RiemannLiouville:
            return rl_derivative(g, sigma, spec.direction)
        if spec.family is Family.GrunwaldLetnikov:
            return gl_derivative(g, sigma, spec.direction)
        if spec.family is Family.Fourier:
            return fourier_derivative(g, sigma)
        if spec.family is Family.Caputo:
            return caputo_derivative(g, sigma, spec.direction)
        return weak_caputo(g, sigma, spec.direction)

    # the right derivative of order m carries (-1)^m
    sign = -1.0 if (spec.direction is Direction.Right
                    and spec.family is not Family.Fourier and m % 2 == 1) else 1.0

    if spec.family in (Family.Caputo, Family.WeakCaputo):
        g = f
        for _ in range(m):
            g = differentiate(g)
        result = fractional(sign * g)
        return result

    result = fractional(f)
    g = result.output
    for _ in range(m):
        g = differentiate(g)
    return OperatorResult(sign * g, result.scheme, None)


def kernel_function(
    grid: Grid, alpha: float, direction: Direction = Direction.Left
) -> SampledFunction:
    r"""Null-space element :math:`(x - a)^{\alpha - 1}` (left) or
    :math:`(b - x)^{\alpha - 1}` (right), endpoint excluded."""
    _check_order(alpha, "kernel function")
    t = grid.x - grid.a if direction is Direction.Left else grid.b - grid.x
    endpoint = 0 if direction is Direction.Left else grid.n
    with np.errstate(divide="ignore"):
        values = t ** (alpha - 1.0)
    return SampledFunction(grid, values, frozenset({endpoint}))


# }}}
