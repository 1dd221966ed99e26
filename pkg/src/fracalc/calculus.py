"""Calculus identities of the fractional operators as residual checks."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from fracalc.core import (
    Direction,
    DomainKind,
    SampledFunction,
    gamma,
    integrate,
    reciprocal_gamma,
    trapezoid_weights,
)
from fracalc.errors import ExtrapolationError, PreconditionError
from fracalc.operators import (
    DECAY_WINDOW_FRACTION,
    _integral_weights,
    differentiate,
    kernel_function,
    rl_derivative,
    rl_integral,
)

#: relative disagreement allowed between the two endpoint-limit estimates
EXTRAPOLATION_TOLERANCE = 1.0e-3


@dataclass(frozen=True)
class ResidualReport:
    identity_name: str
    residual_norm: float
    tolerance: float
    passed: bool
    diagnostics: dict[str, float] = field(default_factory=dict)
    message: str = ""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.residual_norm) and self.residual_norm >= 0.0):
            raise PreconditionError(
                f"{self.identity_name}: residual must be finite and non-negative "
                f"(got {self.residual_norm})")

    @classmethod
    def build(cls, name: str, residual: float, tolerance: float,
              **diagnostics: float) -> ResidualReport:
        residual = float(residual)
        return cls(name, residual, float(tolerance), residual <= tolerance,
                   {k: float(v) for k, v in diagnostics.items()})

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity_name,
            "residual": self.residual_norm,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "diagnostics": dict(sorted(self.diagnostics.items())),
            **({"message": self.message} if self.message else {}),
        }


@dataclass(frozen=True)
class FtfcDecomposition:
    """``f = c κ + I^α D^α f`` with its reconstruction residual."""

    c: float
    kernel_part: SampledFunction
    integral_part: SampledFunction
    residual: float


# {{{ helpers


def interior_mask(f: SampledFunction, delta: float = 0.0) -> np.ndarray:
    """Usable nodes at distance at least ``delta (b - a)`` from both ends."""
    grid = f.grid
    x = grid.x
    margin = delta * grid.length
    return f.mask & (x >= grid.a + margin - 1e-12) & (x <= grid.b - margin + 1e-12)


def relative_l2(
    residual: np.ndarray, reference: np.ndarray, mask: np.ndarray, grid
) -> tuple[float, float]:
    """(‖residual‖ / ‖reference‖, ‖reference‖) by the trapezoid rule on *mask*."""
    w = trapezoid_weights(grid, mask)
    ref = math.sqrt(float(np.sum(w * np.where(mask, reference, 0.0) ** 2)))
    res = math.sqrt(float(np.sum(w * np.where(mask, residual, 0.0) ** 2)))
    if ref == 0.0:
        return res, ref
    return res / ref, ref


def _mirror_if(f: SampledFunction, direction: Direction) -> SampledFunction:
    return f if direction is Direction.Left else f.mirrored()


def integrate_singular(f: SampledFunction) -> float:
    r"""Trapezoid integral with endpoint corrections at excluded nodes.

    On each side of an excluded node the samples are fitted by
    :math:`C t^\beta + E` (exponent from nodes 1, 2, 4). For an integrable
    singularity the missing part of the trapezoid sum is restored by the
    generalized Euler-Maclaurin term :math:`-\zeta(-\beta) C h^{1 + \beta}`
    plus the half-weight of :math:`E`; a bounded one-sided limit is
    extrapolated linearly instead.
    """
    total = integrate(f)
    h = f.grid.h
    values = f.values
    mask = f.mask

    for s in sorted(f.excluded):
        for side in (-1, 1):
            idx = [s + side * k for k in (1, 2, 3, 4)]
            if not all(0 <= i <= f.grid.n and mask[i] for i in idx):
                continue
            p1, p2, _, p4 = (values[i] for i in idx)
            d1, d2 = p2 - p1, p4 - p2
            beta = math.log2(d2 / d1) if d1 != 0.0 and d2 / d1 > 0.0 else None

            if beta is not None and -1.0 < beta < 0.0:
                c = d1 / (h**beta * (2.0**beta - 1.0))
                e = p1 - c * h**beta
                total += -zeta(-beta) * c * h ** (1.0 + beta) + 0.5 * h * e
            else:
                total += 0.5 * h * (2.0 * p1 - p2)

    return total


# }}}


# {{{ FTFC


#: exponent range scanned by the two-term endpoint model
_EXPONENT_SCAN = np.linspace(0.02, 2.98, 149)


def _two_term_fit(samples: np.ndarray, exponent: float) -> np.ndarray:
    """(A, B, C) with ``A + B j^γ + C j^{γ + 1}`` through ``j = 1, 2, 4``."""
    j = np.array([1.0, 2.0, 4.0])
    matrix = np.stack([np.ones(3), j**exponent, j ** (exponent + 1.0)], axis=1)
    return np.linalg.solve(matrix, samples[:3])


def endpoint_limit(values: np.ndarray, step: int = 1) -> float:
    r"""Limit at node 0 of samples behaving like
    :math:`A + B t^\gamma + C t^{\gamma + 1}`.

    Uses nodes ``step``, ``2 step``, ``4 step`` and ``8 step``: for each
    trial :math:`\gamma > 0` the first three fix ``A, B, C`` and the
    fourth selects :math:`\gamma`. Of several admissible exponents the one
    that best predicts node ``16 step`` wins, or, without that node, the one
    closest to the single-term estimate from the first three nodes. Without
    any, the single-term model :math:`A + B t^\gamma` is used.
    Constant samples are returned unchanged.
    """
    f1, f2, f4, f8 = (values[j * step] for j in (1, 2, 4, 8))
    d1, d2 = f2 - f1, f4 - f2
    noise = 1.0e-12 * max(abs(f1), abs(f2), abs(f4), abs(f8))
    if max(abs(d1), abs(d2), abs(f8 - f4)) <= noise:
        return float(f1)
    if d1 == 0.0:
        raise ExtrapolationError("samples near the endpoint are not monotone")
    ratio = d2 / d1
    if not ratio > 1.0:
        raise ExtrapolationError(
            "samples near the endpoint do not approach a limit monotonically")
    # single term: f1 = A + B h^γ and f2 - f1 = B h^γ (2^γ - 1)
    single = float(f1 - d1 / (ratio - 1.0))
    guess = math.log2(ratio)

    samples = np.array([f1, f2, f4])

    def mismatch(exponent: float) -> float:
        a, b, c = _two_term_fit(samples, exponent)
        return float(a + b * 8.0**exponent + c * 8.0 ** (exponent + 1.0) - f8)

    scan = [mismatch(e) for e in _EXPONENT_SCAN]
    roots = [
        brentq(mismatch, _EXPONENT_SCAN[i], _EXPONENT_SCAN[i + 1])
        for i in range(len(scan) - 1)
        if scan[i] == 0.0 or np.sign(scan[i]) != np.sign(scan[i + 1])
    ]
    if not roots:
        return single
    if len(roots) > 1 and 16 * step < len(values):
        # node 16 arbitrates between admissible exponents
        def miss16(exponent: float) -> float:
            a, b, c = _two_term_fit(samples, exponent)
            return abs(a + b * 16.0**exponent + c * 16.0 ** (exponent + 1.0)
                       - values[16 * step])
        exponent = min(roots, key=miss16)
    else:
        exponent = min(roots, key=lambda r: abs(r - guess))
    return float(_two_term_fit(samples, exponent)[0])


def ftfc_constant(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left
) -> float:
    r"""Kernel coefficient :math:`c` with :math:`f = c \kappa + I^\alpha D^\alpha f`.

    :math:`c` is the endpoint limit of :math:`I^{1 - \alpha} f` divided by
    :math:`\Gamma(\alpha)`; see :func:`endpoint_limit`. The estimate from
    nodes 2, 4, 8, 16 must agree with the one from nodes 1, 2, 4, 8. A
    function whose endpoint sample is present is bounded there, so its
    limit, and ``c``, is zero.
    """
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"FTFC requires 0<α<1 (got α={alpha})")

    f = _mirror_if(f, direction)
    if 0 not in f.excluded:
        # bounded near the endpoint: |I^{1-α} f(t)| <= max|f| t^{1-α} / Γ(2-α) -> 0
        return 0.0

    g = rl_integral(f, 1.0 - alpha).output
    if 0 in g.excluded:
        raise ExtrapolationError(
            "I^{1-α} f is unbounded at the initial endpoint; no kernel coefficient")

    values = g.values
    first = endpoint_limit(values, 1)
    second = endpoint_limit(values, 2)

    scale = max(abs(first), float(np.max(np.abs(g.filled()))))
    if abs(first - second) > EXTRAPOLATION_TOLERANCE * scale:
        raise ExtrapolationError(
            f"endpoint limit of I^(1-α) f is unstable: estimates {first!r} "
            f"and {second!r} differ by more than {EXTRAPOLATION_TOLERANCE:g} relative")

    return first * reciprocal_gamma(alpha)


def ftfc_reconstruct(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left
) -> FtfcDecomposition:
    """Split *f* into its kernel part and :math:`I^\\alpha D^\\alpha f`.

    On a truncated line the kernel coefficient is zero by definition.
    """
    if f.grid.kind is DomainKind.TruncatedLine:
        c = 0.0
    else:
        c = ftfc_constant(f, alpha, direction)

    kappa = kernel_function(f.grid, alpha, direction)
    kernel_part = c * kappa

    derivative = rl_derivative(f, alpha, direction).output
    integral_part = rl_integral(
        derivative, alpha, direction, endpoint_exponent=-alpha).output

    recon = kernel_part + integral_part
    mask = f.mask & recon.mask
    residual, _ = relative_l2(
        recon.filled() - f.filled(), f.filled(), mask, f.grid)

    return FtfcDecomposition(c, kernel_part, integral_part, residual)


def ftfc_round_trip(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    """Relative L2 error of ``D^α I^α f - f``."""
    back = rl_derivative(rl_integral(f, alpha, direction).output, alpha, direction)
    back = back.output
    mask = f.mask & back.mask
    residual, _ = relative_l2(back.filled() - f.filled(), f.filled(), mask, f.grid)
    return ResidualReport.build("ftfc-round-trip", residual, tolerance, alpha=alpha)


def ftfc_reconstruction_check(
    f: SampledFunction, alpha: float, direction: Direction = Direction.Left,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    decomposition = ftfc_reconstruct(f, alpha, direction)
    return ResidualReport.build(
        "ftfc-reconstruction", decomposition.residual, tolerance,
        alpha=alpha, c=decomposition.c)


# }}}


# {{{ product and chain rules


def _fractional_weight_row(i: int, toeplitz: np.ndarray, first: np.ndarray) -> np.ndarray:
    """Product-trapezoid weights of node i against nodes 0..i."""
    row = np.empty(i + 1)
    row[0] = first[i]
    row[1:] = toeplitz[i - 1::-1] if i > 0 else row[1:]
    return row


def product_rule_remainder(
    f: np.ndarray,
    psi: Sequence[np.ndarray],
    h: float,
    alpha: float,
    m: int,
) -> np.ndarray:
    r"""Left product-rule remainder :math:`R_m(f, \psi)`.

    Expanding :math:`\psi(y)` in a Taylor polynomial about :math:`x` leaves

    .. math::

        R_m(x) = \frac{1}{\Gamma(-\alpha)} \int_a^x f(y) (x - y)^{-1-\alpha}
            \Big[\psi(y) - \sum_{k \le m} \psi^{(k)}(x) \frac{(y - x)^k}{k!}\Big] dy
            = -\alpha \, I^{1 - \alpha}_y [f(y) Q_m(x, y)](x),

    where :math:`Q_m` is the bracket divided by :math:`x - y`. This is the
    iterated integral with inner kernel :math:`(z - y)^m`, evaluated exactly.
    The outer integral uses the product trapezoid rule.

    *psi* lists :math:`\psi, \psi', \dots, \psi^{(m + 1)}` on the grid.
    """
    n = f.size - 1
    sigma = 1.0 - alpha
    toeplitz, first = _integral_weights(n, sigma)
    scale = h**sigma * reciprocal_gamma(sigma + 2.0)

    out = np.zeros(n + 1)
    for i in range(1, n + 1):
        gap = h * (np.arange(i, dtype=np.float64) - i)
        taylor = np.zeros(i)
        power = np.ones(i)
        for k in range(m + 1):
            taylor += psi[k][i] * power / math.factorial(k)
            power = power * gap

        quotient = np.empty(i + 1)
        quotient[:i] = (psi[0][:i] - taylor) / (-gap)
        quotient[i] = -psi[1][i] if m == 0 else 0.0

        row = _fractional_weight_row(i, toeplitz, first)
        out[i] = scale * float(np.dot(row, f[: i + 1] * quotient))

    return -alpha * out


def _derivative_stack(
    psi: SampledFunction, count: int, given: Sequence[SampledFunction] | None
) -> list[SampledFunction]:
    stack = [psi]
    if given:
        stack.extend(given)
    while len(stack) <= count:
        stack.append(differentiate(stack[-1]))
    return stack[: count + 1]


def _product_rule(
    name: str,
    f: SampledFunction,
    psi: SampledFunction,
    alpha: float,
    direction: Direction,
    m: int,
    derivatives: Sequence[SampledFunction] | None,
    tolerance: float,
    **diagnostics: float,
) -> ResidualReport:
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"product rule requires 0<α<1 (got α={alpha})")
    if m < 0:
        raise PreconditionError("m must be non-negative")
    if f.excluded or psi.excluded:
        raise PreconditionError("product rule needs finite samples at every node")

    stack = _derivative_stack(psi, m + 1, derivatives)
    if direction is Direction.Right:
        f = f.mirrored()
        stack = [(-1.0) ** k * d.mirrored() for k, d in enumerate(stack)]

    grid = f.grid
    lhs = rl_derivative(f * stack[0], alpha).output

    rhs = rl_derivative(f, alpha).output.filled() * stack[0].values
    for k in range(1, m + 1):
        coeff = (gamma(1.0 + alpha) * reciprocal_gamma(k + 1.0)
                 * reciprocal_gamma(1.0 - k + alpha))
        rhs = rhs + coeff * rl_integral(f, k - alpha).output.values * stack[k].values

    remainder = product_rule_remainder(
        f.values, [d.values for d in stack], grid.h, alpha, m)
    rhs = rhs + remainder

    mask = lhs.mask
    residual, lhs_norm = relative_l2(lhs.filled() - rhs, lhs.filled(), mask, grid)
    rem_norm, _ = relative_l2(remainder, np.ones_like(remainder), mask, grid)
    return ResidualReport.build(
        name, residual, tolerance,
        alpha=alpha, m=m, n=grid.n, lhs_norm=lhs_norm,
        remainder_norm=rem_norm, **diagnostics)


def product_rule_check(
    f: SampledFunction,
    psi: SampledFunction,
    alpha: float,
    direction: Direction = Direction.Left,
    m: int = 0,
    *,
    psi_derivatives: Sequence[SampledFunction] | None = None,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    r"""Residual of :math:`D^\alpha(f\psi) = \sum_{k \le m} C_{k,\alpha}
    D^{\alpha - k} f \, D^k \psi + R_m(f, \psi)`, relative to the left side.

    *psi_derivatives* optionally gives :math:`\psi', \psi'', \dots`
    analytically; missing ones come from finite differences.
    """
    return _product_rule(
        "product-rule", f, psi, alpha, direction, m, psi_derivatives, tolerance)


def chain_rule_check(
    f: SampledFunction,
    phi: Callable[[np.ndarray], np.ndarray],
    dphi: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    direction: Direction = Direction.Left,
    *,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    r"""Residual of :math:`D^\alpha \varphi(f) = \frac{\varphi(f)}{f} D^\alpha f
    + R_0(f, \varphi(f) / f)`.

    Where ``f`` vanishes the ratio is replaced by its limit
    :math:`\varphi'(0)`; the number of such nodes is reported.
    """
    if float(np.asarray(phi(np.array([0.0])))[0]) != 0.0:
        raise PreconditionError("chain rule requires phi(0) = 0")

    values = f.filled()
    zero = values == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(zero, float(np.asarray(dphi(np.array([0.0])))[0]),
                         np.asarray(phi(values)) / values)

    return _product_rule(
        "chain-rule", f, f.with_values(ratio), alpha, direction, 0, None,
        tolerance, limit_nodes=int(np.count_nonzero(zero)))


# }}}


# {{{ integration by parts


def ibp_residual(
    f: SampledFunction,
    g: SampledFunction,
    alpha: float,
    direction: Direction = Direction.Left,
    *,
    sigma: float | None = None,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    r"""Integration-by-parts residuals.

    The derivative form compares :math:`\int f \, D^\alpha_{opp} g` with
    :math:`\int (D^\alpha_{dir} f) g`; the integral form does the same with
    :math:`I^\sigma` (``sigma`` defaults to ``alpha``). Both signed residuals
    are divided by :math:`\|f\|_2 \|g\|_2`; the derivative form decides
    pass/fail and the integral form is reported in the diagnostics.
    """
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"IBP requires 0<α<1 (got α={alpha})")
    sigma = alpha if sigma is None else sigma
    opp = direction.opposite

    norm = _l2(f) * _l2(g)
    if norm == 0.0:
        return ResidualReport.build(
            "ibp", 0.0, tolerance, signed=0.0, integral_form=0.0, integral_signed=0.0)

    lhs = integrate(f * rl_derivative(g, alpha, opp).output)
    rhs = integrate(rl_derivative(f, alpha, direction).output * g)
    signed = (lhs - rhs) / norm

    lhs_i = integrate(f * rl_integral(g, sigma, direction).output)
    rhs_i = integrate(rl_integral(f, sigma, opp).output * g)
    signed_i = (lhs_i - rhs_i) / norm

    return ResidualReport.build(
        "ibp", abs(signed), tolerance,
        signed=signed, integral_form=abs(signed_i), integral_signed=signed_i,
        alpha=alpha, sigma=sigma)


def _l2(f: SampledFunction) -> float:
    w = trapezoid_weights(f.grid, f.mask)
    return math.sqrt(float(np.sum(w * f.filled() ** 2)))


# }}}


# {{{ weak derivatives


def bump(x: np.ndarray, center: float = 0.0, radius: float = 1.0) -> np.ndarray:
    r"""Smooth bump :math:`\exp(-1 / (1 - t^2))`, ``t = (x - center) / radius``."""
    t = (np.asarray(x, dtype=np.float64) - center) / radius
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out


BATTERY_WIDTHS = (0.1, 0.2, 0.4)


def bump_battery(grid, battery_size: int) -> list[SampledFunction]:
    """Bumps at *battery_size* equispaced centres for each relative width.

    Supports are shifted where necessary to stay strictly inside the
    interval, leaving at least two cells of margin (more on a truncated
    line, where the supports must also clear the decay window).
    """
    if battery_size < 1:
        raise PreconditionError("battery_size must be positive")

    members = []
    margin = 2.0 * grid.h
    if grid.kind is DomainKind.TruncatedLine:
        # keep supports clear of the window used by the decay check
        margin = max(margin, 2.0 * DECAY_WINDOW_FRACTION * grid.length)
    for width in BATTERY_WIDTHS:
        radius = 0.5 * width * grid.length
        lo = grid.a + margin + radius
        hi = grid.b - margin - radius
        for j in range(battery_size):
            centre = grid.a + (j + 1) * grid.length / (battery_size + 1)
            centre = min(max(centre, lo), hi)
            members.append(SampledFunction(grid, bump(grid.x, centre, radius)))
    return members


def perturbed_candidate(
    v: SampledFunction,
    u: SampledFunction,
    level: float = 0.1,
    seed: int = 0,
    blocks: int = 8,
) -> SampledFunction:
    """Candidate with injected noise: ``v (1 + level ξ)`` with ``ξ`` a seeded
    pattern of ±1 on contiguous blocks. If ``v`` vanishes, the noise is
    additive with amplitude ``level · max|u|``."""
    rng = np.random.default_rng(seed)
    signs = rng.choice([-1.0, 1.0], size=blocks)
    pattern = signs[np.minimum(
        (np.arange(v.grid.n + 1) * blocks) // (v.grid.n + 1), blocks - 1)]

    values = v.filled()
    if np.max(np.abs(values)) == 0.0:
        amplitude = level * float(np.max(np.abs(u.filled())))
        return v.with_values(amplitude * pattern)
    return v.with_values(values * (1.0 + level * pattern))


def weak_derivative_verify(
    u: SampledFunction,
    v_candidate: SampledFunction,
    alpha: float,
    direction: Direction = Direction.Left,
    battery_size: int = 8,
    *,
    tolerance: float = 1.0e-2,
) -> ResidualReport:
    r"""Test :math:`\int v \varphi = \int u \, D^\alpha_{opp} \varphi` on a bump
    battery.

    Each member's discrepancy is divided by
    :math:`\int |u D^\alpha_{opp} \varphi| + \int |v \varphi|`; the report
    carries the maximum. On a truncated line ``u`` is continued by its
    end values beyond the window, which adds
    :math:`-u(\text{end}) I^{1 - \alpha}_{opp} \varphi(\text{end})` at the
    polluted end.
    """
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"weak derivative requires 0<α<1 (got α={alpha})")
    if u.grid != v_candidate.grid:
        raise PreconditionError("u and v_candidate live on different grids")

    grid = u.grid
    opp = direction.opposite
    line = grid.kind is DomainKind.TruncatedLine
    usable = np.flatnonzero(u.mask)
    end = int(usable[0] if opp is Direction.Right else usable[-1])
    end_value = float(u.values[end])
    closure_node = 0 if opp is Direction.Right else grid.n

    residuals = []
    for phi in bump_battery(grid, battery_size):
        dphi = rl_derivative(phi, alpha, opp).output
        rhs = integrate_singular(u * dphi)
        scale = integrate(SampledFunction(
            grid, np.abs((u * dphi).filled()), (u * dphi).excluded))

        if line:
            tail = rl_integral(phi, 1.0 - alpha, opp).output.values[closure_node]
            rhs += -end_value * tail
            scale += abs(end_value * tail)

        product = v_candidate * phi
        lhs = integrate_singular(product)
        scale += integrate_singular(SampledFunction(
            grid, np.abs(product.filled()), product.excluded))

        residuals.append(abs(lhs - rhs) / scale if scale > 0.0 else 0.0)

    residuals = np.array(residuals)
    return ResidualReport.build(
        "weak-derivative", float(np.max(residuals)), tolerance,
        alpha=alpha, members=residuals.size, mean_residual=float(np.mean(residuals)),
        exterior_closure=float(line))


# }}}


# {{{ mollification


def mollifier(h: float, epsilon: float) -> np.ndarray:
    """Samples of the unit-mass mollifier of radius *epsilon* at spacing *h*."""
    if not epsilon >= 2.0 * h:
        raise PreconditionError(
            f"mollifier radius must be at least two cells (ε={epsilon}, h={h})")
    k = int(math.floor(epsilon / h))
    eta = bump(np.arange(-k, k + 1) * h, 0.0, epsilon)
    return eta / (h * np.sum(eta))


def mollify(f: SampledFunction, epsilon: float) -> SampledFunction:
    """Discrete convolution with the mollifier; zero outside the grid."""
    if f.excluded:
        raise PreconditionError("mollify needs finite samples at every node")
    eta = mollifier(f.grid.h, epsilon)
    return f.with_values(f.grid.h * np.convolve(f.values, eta, mode="same"))


def mollifier_commutation(
    f: SampledFunction,
    alpha: float,
    epsilon: float,
    direction: Direction = Direction.Left,
    *,
    tolerance: float = 1.0e-3,
) -> ResidualReport:
    """Relative L2 distance between ``D^α(f^ε)`` and ``(D^α f)^ε``.

    Compared on the nodes at least ``epsilon`` from the window ends, where
    the mollified derivative is fully determined by the window.
    """
    smooth_first = rl_derivative(mollify(f, epsilon), alpha, direction).output
    derivative = rl_derivative(f, alpha, direction).output
    derivative = SampledFunction(f.grid, derivative.filled())
    smooth_last = mollify(derivative, epsilon)

    x = f.grid.x
    mask = ((x >= f.grid.a + epsilon) & (x <= f.grid.b - epsilon)
            & smooth_first.mask)
    residual, _ = relative_l2(
        smooth_first.filled() - smooth_last.values, smooth_last.values, mask, f.grid)
    return ResidualReport.build(
        "mollifier-commutation", residual, tolerance, alpha=alpha, epsilon=epsilon)


# }}}
