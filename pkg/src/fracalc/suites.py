"""Verification suites: named batches of identity checks."""

from __future__ import annotations

import dataclasses
import enum
import math
import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from fracalc.calculus import (
    ResidualReport,
    bump,
    chain_rule_check,
    ftfc_constant,
    ftfc_reconstruction_check,
    ftfc_round_trip,
    ibp_residual,
    interior_mask,
    mollifier_commutation,
    perturbed_candidate,
    product_rule_check,
    weak_derivative_verify,
)
from fracalc.core import (
    Direction,
    DomainKind,
    Grid,
    SampledFunction,
    gamma,
    lp_norm,
    sample,
    trapezoid_weights,
)
from fracalc.errors import ConfigError, ExtensionConditionError, FracalcError
from fracalc.operators import (
    boundary_kernel,
    caputo_derivative,
    fourier_derivative,
    gl_derivative,
    kernel_function,
    rl_derivative,
)
from fracalc.oracle import OracleCase, OracleKind, step_weak_derivative
from fracalc.sobolev import (
    DIVERGENCE_GROWTH,
    Side,
    SobolevSpec,
    exterior_extension,
    frac_sobolev_norm,
    gagliardo_seminorm,
    h_alpha_equivalence_ratio,
    poincare_bound,
    poincare_ratio,
    pollution_slope,
    pollution_tail,
    sobolev_conjugate_check,
    step_norm_regime,
    trace,
    trivial_extension,
)

#: smooth functions on (0, 1), not vanishing at the ends
SMOOTH_FAMILY: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exp": np.exp,
    "trig": lambda x: np.cos(2.0 * x) + 0.5 * np.sin(5.0 * x),
    "poly": lambda x: 1.0 + x - 2.0 * x**2 + x**3,
}

#: smooth functions on (0, 1) vanishing at the left end
VANISHING_FAMILY: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin": lambda x: np.sin(np.pi * x),
    "xexp": lambda x: x * np.exp(x),
    "cubic": lambda x: x * (1.0 - x) + x**3,
}

#: bump profiles (centre, radius) on the window [-8, 8]
LINE_BUMPS: dict[str, tuple[float, float]] = {
    "narrow": (0.0, 1.0),
    "offset": (0.5, 2.0),
    "wide": (-1.0, 3.0),
}

LINE_WINDOW = (-8.0, 8.0)


class Suite(enum.Enum):
    Ftfc = "ftfc"
    Product = "product"
    Chain = "chain"
    Ibp = "ibp"
    Weak = "weak"
    Mollify = "mollify"
    Equivalences = "equivalences"
    Sobolev = "sobolev"
    Poincare = "poincare"
    Pollution = "pollution"
    Extensions = "extensions"


class WeakCase(enum.Enum):
    ConstantLine = "constant-line"
    Constant = "constant"
    Step = "step"


DEFAULT_TOLERANCES: dict[str, float] = {
    "ftfc": 1.0e-3,
    "kernel-constant": 1.0e-2,
    "null-space": 1.0e-2,
    "product": 1.0e-3,
    "chain": 1.0e-3,
    "ibp": 1.0e-3,
    "exact-zero": 1.0e-10,
    "weak": 1.0e-2,
    "mollify": 1.0e-3,
    "caputo-rl": 1.0e-10,
    "gl-order": 0.8,
    "fourier-rl": 1.0e-3,
    "plancherel": 2.0e-2,
    "conjugate": 5.0e-2,
    "norm-axioms": 1.0e-12,
    "trace": 1.0e-6,
    "gagliardo": 2.0e-2,
    "poincare": 1.05,
    "pollution": 5.0e-2,
}


@dataclass(frozen=True)
class SuiteSettings:
    alpha: float = 0.5
    n: int = 4096
    seed: int = 0
    cases: tuple[WeakCase, ...] = tuple(WeakCase)
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"suites need 0 < alpha < 1 (got {self.alpha})")
        if self.n < 64:
            raise ConfigError(f"suites need n >= 64 (got {self.n})")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def unit_grid(self) -> Grid:
        return Grid(0.0, 1.0, self.n)

    def line_grid(self) -> Grid:
        return Grid(*LINE_WINDOW, self.n, DomainKind.TruncatedLine)


def _label(report: ResidualReport, label: str) -> ResidualReport:
    return dataclasses.replace(report, identity_name=f"{report.identity_name}[{label}]")


def _gate(name: str, passed: bool, residual: float, tolerance: float,
          **diagnostics: float) -> ResidualReport:
    """A report whose verdict is not ``residual <= tolerance``."""
    return ResidualReport(name, float(residual), float(tolerance), bool(passed),
                          {k: float(v) for k, v in diagnostics.items()})


def _guarded(name: str, check: Callable[[], ResidualReport]) -> ResidualReport:
    """Run one identity; a numerical precondition failure becomes its FAIL report."""
    try:
        return check()
    except (FracalcError, OverflowError) as exc:
        return ResidualReport(name, 0.0, 0.0, False, message=str(exc))


def _relative_max(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> float:
    scale = float(np.max(np.abs(b[mask])))
    diff = float(np.max(np.abs(a[mask] - b[mask])))
    return diff / scale if scale > 0.0 else diff


# {{{ suites


def ftfc_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    reports = []
    for name, func in SMOOTH_FAMILY.items():
        f = sample(func, grid)
        reports.append(_label(ftfc_round_trip(f, s.alpha, tolerance=s.tol("ftfc")), name))
        reports.append(_label(
            ftfc_reconstruction_check(f, s.alpha, tolerance=s.tol("ftfc")), name))

    for direction in Direction:
        kappa = kernel_function(grid, s.alpha, direction)
        c = ftfc_constant(kappa, s.alpha, direction)
        reports.append(ResidualReport.build(
            f"ftfc-kernel-constant[{direction.value}]", abs(c - 1.0),
            s.tol("kernel-constant"), alpha=s.alpha, c=c))

        d = rl_derivative(kappa, s.alpha, direction).output
        mask = interior_mask(d, 0.1) & kappa.mask
        w = trapezoid_weights(grid, mask)
        ratio = (float(np.sum(w * np.abs(d.filled())))
                 / float(np.sum(w * np.abs(kappa.filled()))))
        reports.append(ResidualReport.build(
            f"null-space[{direction.value}]", ratio, s.tol("null-space"), alpha=s.alpha))
    return reports


def product_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    tol = s.tol("product")
    f = sample(lambda x: bump(x, 0.4, 0.3), grid)
    psi = sample(lambda x: bump(x, 0.6, 0.35), grid)
    smooth = sample(lambda x: np.exp(x) * np.sin(2.0 * x) + 1.0, grid)

    reports = [
        _label(product_rule_check(f, psi, s.alpha, d, tolerance=tol), f"bumps,m=0,{d.value}")
        for d in Direction
    ]
    for m in (1, 2):
        reports.append(_label(product_rule_check(
            smooth, sample(np.cos, grid), s.alpha, m=m, tolerance=tol), f"cos,m={m}"))

    const = product_rule_check(smooth, sample(lambda x: 1.0 + 0.0 * x, grid), s.alpha,
                               tolerance=s.tol("exact-zero"))
    reports.append(_label(const, "psi=1"))

    linear = product_rule_check(smooth, sample(lambda x: x, grid), s.alpha, m=1, tolerance=tol)
    reports.append(_label(linear, "psi=x,m=1"))
    reports.append(ResidualReport.build(
        "product-remainder-zero[psi=x,m=1]", linear.diagnostics["remainder_norm"],
        s.tol("exact-zero"), alpha=s.alpha))
    return reports


def chain_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    tol = s.tol("chain")
    smooth = sample(lambda x: np.exp(x) * np.sin(2.0 * x) + 1.0, grid)
    f = sample(lambda x: bump(x, 0.4, 0.3), grid)
    return [
        _label(chain_rule_check(smooth, lambda v: v, lambda v: 1.0 + 0.0 * v, s.alpha,
                                tolerance=s.tol("exact-zero")), "identity"),
        _label(chain_rule_check(smooth, lambda v: v**2, lambda v: 2.0 * v, s.alpha,
                                tolerance=tol), "square"),
        _label(chain_rule_check(f, lambda v: v**3 - 2.0 * v, lambda v: 3.0 * v**2 - 2.0,
                                s.alpha, tolerance=tol), "cubic"),
    ]


def ibp_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    tol = s.tol("ibp")
    f = sample(lambda x: x**2, grid)
    g = sample(lambda x: bump(x, 0.5, 0.3), grid)
    reports = []
    for direction in Direction:
        r = ibp_residual(f, g, s.alpha, direction, tolerance=tol)
        reports.append(_label(r, f"derivative,{direction.value}"))
        reports.append(ResidualReport.build(
            f"ibp[integral,{direction.value}]", r.diagnostics["integral_form"], tol,
            alpha=s.alpha))
    return reports


def _weak_pair(s: SuiteSettings, case: WeakCase) -> tuple[SampledFunction, SampledFunction]:
    if case is WeakCase.ConstantLine:
        grid = s.line_grid()
        return sample(lambda x: 2.0 + 0.0 * x, grid), sample(lambda x: 0.0 * x, grid)
    if case is WeakCase.Constant:
        grid = s.unit_grid()
        const = OracleCase(OracleKind.Constant, {"c": 2.0})
        return sample(const.value, grid), sample(lambda x: const.rl_derivative(x, s.alpha), grid)
    grid = Grid(-1.0, 1.0, s.n)
    step = OracleCase(OracleKind.StepFunction, {"lambda": 0.5, "mu": 2.0})
    return sample(step.value, grid), sample(step_weak_derivative(0.5, 2.0, s.alpha), grid)


def weak_suite(s: SuiteSettings) -> list[ResidualReport]:
    tol = s.tol("weak")
    reports = []
    for case in s.cases:
        u, v = _weak_pair(s, case)
        reports.append(_label(
            weak_derivative_verify(u, v, s.alpha, tolerance=tol), f"accept,{case.value}"))

        noisy = perturbed_candidate(v, u, seed=s.seed)
        r = weak_derivative_verify(u, noisy, s.alpha, tolerance=tol)
        reports.append(_gate(
            f"weak-derivative[reject,{case.value}]", r.residual_norm > tol,
            r.residual_norm, tol, expect_rejection=1.0, **r.diagnostics))
    return reports


def mollify_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.line_grid()
    tol = s.tol("mollify")
    c1_bump = lambda x: np.clip(1.0 - ((x - 0.3) / 1.5) ** 2, 0.0, None) ** 2  # noqa: E731
    profiles = {"smooth": lambda x: bump(x, 0.3, 1.5), "c1": c1_bump}
    return [
        _guarded(f"mollifier-commutation[{name}]", lambda func=func, name=name: _label(
            mollifier_commutation(sample(func, grid), s.alpha, 0.1, tolerance=tol), name))
        for name, func in profiles.items()
    ]


def _line_bump(grid: Grid, name: str) -> SampledFunction:
    centre, radius = LINE_BUMPS[name]
    return sample(lambda x: bump(x, centre, radius), grid)


def equivalences_suite(s: SuiteSettings) -> list[ResidualReport]:
    reports = []
    grid = s.unit_grid()
    for name, func in SMOOTH_FAMILY.items():
        f = sample(func, grid)
        for direction in Direction:
            rl = rl_derivative(f, s.alpha, direction).output
            caputo = caputo_derivative(f, s.alpha, direction).output
            end = 0 if direction is Direction.Left else grid.n
            expected = rl.filled() - f.values[end] * np.nan_to_num(
                boundary_kernel(grid, s.alpha, direction), posinf=0.0)
            mask = rl.mask & caputo.mask
            reports.append(ResidualReport.build(
                f"caputo-rl[{name},{direction.value}]",
                _relative_max(caputo.filled(), expected, mask), s.tol("caputo-rl"),
                alpha=s.alpha))

    # GL against RL on a refinement ladder ending at n
    sizes = [max(16, s.n // 2**k) for k in (4, 3, 2, 1, 0)]
    errors = []
    for size in sizes:
        g = Grid(0.0, 1.0, size)
        f = sample(lambda x: np.sin(np.pi * x), g)
        sel = (g.x >= 0.05) & (g.x <= 0.95)
        errors.append(_relative_max(gl_derivative(f, s.alpha).output.filled(),
                                    rl_derivative(f, s.alpha).output.filled(), sel))
    order = -float(np.polyfit(np.log(sizes), np.log(errors), 1)[0])
    floor = s.tol("gl-order")
    reports.append(_gate("gl-rl-order", order >= floor, max(0.0, floor - order), 0.0,
                         order=order, finest_error=errors[-1], alpha=s.alpha))

    line = s.line_grid()
    for name, (centre, radius) in LINE_BUMPS.items():
        def fourier_check(name: str = name, centre: float = centre,
                          radius: float = radius) -> ResidualReport:
            f = _line_bump(line, name)
            support = np.abs(line.x - centre) < radius
            fourier = fourier_derivative(f, s.alpha).output.filled()
            rl = rl_derivative(f, s.alpha).output.filled()
            return ResidualReport.build(
                f"fourier-rl[{name}]", _relative_max(fourier, rl, support),
                s.tol("fourier-rl"), alpha=s.alpha)
        reports.append(_guarded(f"fourier-rl[{name}]", fourier_check))
    return reports


def _subcritical_p(alpha: float) -> float:
    """An exponent with ``alpha p < 1``."""
    return min(2.0, 0.5 * (1.0 + 1.0 / alpha))


def sobolev_suite(s: SuiteSettings) -> list[ResidualReport]:
    reports = []
    line = s.line_grid()
    for name in LINE_BUMPS:
        ratio = h_alpha_equivalence_ratio(_line_bump(line, name), s.alpha)
        reports.append(ResidualReport.build(
            f"plancherel-ratio[{name}]", abs(ratio - 1.0), s.tol("plancherel"),
            ratio=ratio, alpha=s.alpha))

    p = _subcritical_p(s.alpha)
    reports.append(_label(sobolev_conjugate_check(
        _line_bump(line, "narrow"), s.alpha, p, tolerance=s.tol("conjugate")), "narrow"))

    stable = step_norm_regime(s.alpha, max(1.0, 0.5 / s.alpha))
    reports.append(_gate(
        "regime-subcritical", not stable.divergent and stable.growth[-1] < DIVERGENCE_GROWTH,
        stable.growth[-1], DIVERGENCE_GROWTH, alpha_p=stable.alpha * stable.p,
        final_norm=stable.norms[-1]))
    # the norm grows like 2^(α - 1/p) per doubling; p = 4/α keeps that
    # visibly above the divergence threshold
    diverging = step_norm_regime(s.alpha, 4.0 / s.alpha)
    reports.append(_gate(
        "regime-supercritical", diverging.divergent,
        max(0.0, DIVERGENCE_GROWTH - min(diverging.growth)), 0.0,
        alpha_p=diverging.alpha * diverging.p, min_growth=min(diverging.growth)))

    # norm axioms on seeded random combinations of the smooth family
    grid = s.unit_grid()
    spec = SobolevSpec(s.alpha, 2.0, Side.Left)
    rng = np.random.default_rng(s.seed)
    basis = [sample(func, grid) for func in VANISHING_FAMILY.values()]
    worst_homogeneity = worst_triangle = 0.0
    for _ in range(3):
        u = sum((float(c) * b for c, b in zip(rng.normal(size=3), basis)), 0.0 * basis[0])
        v = sum((float(c) * b for c, b in zip(rng.normal(size=3), basis)), 0.0 * basis[0])
        scale = float(rng.uniform(-3.0, 3.0))
        nu, nv = frac_sobolev_norm(u, spec), frac_sobolev_norm(v, spec)
        worst_homogeneity = max(
            worst_homogeneity, abs(frac_sobolev_norm(scale * u, spec) - abs(scale) * nu) / nu)
        excess = (frac_sobolev_norm(u + v, spec) - nu - nv) / (nu + nv)
        worst_triangle = max(worst_triangle, excess, 0.0)
    reports.append(ResidualReport.build(
        "norm-homogeneity", worst_homogeneity, s.tol("norm-axioms")))
    reports.append(ResidualReport.build(
        "norm-triangle", worst_triangle, s.tol("norm-axioms")))

    # traces need alpha p > 1
    trace_spec = SobolevSpec(s.alpha, 2.0 / s.alpha, Side.Left)
    kappa = kernel_function(grid, s.alpha)
    value = trace(kappa, trace_spec).value
    reports.append(ResidualReport.build(
        "trace-kernel", abs(value - grid.length ** (s.alpha - 1.0)), s.tol("trace"),
        value=value))

    constant = gagliardo_seminorm(sample(lambda x: 3.0 + 0.0 * x, grid), 0.25, 2.0)
    reports.append(ResidualReport.build("gagliardo-constant", constant, s.tol("norm-axioms")))
    linear = gagliardo_seminorm(sample(lambda x: x, grid), 0.25, 2.0)
    exact = math.sqrt(2.0 / (1.5 * 2.5))
    reports.append(ResidualReport.build(
        "gagliardo-linear", abs(linear / exact - 1.0), s.tol("gagliardo"),
        value=linear, exact=exact))
    return reports


def poincare_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    bound = poincare_bound(grid, s.alpha)
    reports = []
    # a nonzero start value puts t^-α in the derivative, so p must keep αp < 1
    cases = [(name, func, _subcritical_p(s.alpha)) for name, func in SMOOTH_FAMILY.items()]
    cases += [(name, func, 2.0) for name, func in VANISHING_FAMILY.items()]
    for name, func, p in cases:
        result = poincare_ratio(sample(func, grid), s.alpha, p)
        reports.append(ResidualReport.build(
            f"poincare-bound[{name}]", result.ratio / bound, s.tol("poincare"),
            ratio=result.ratio, bound=bound, p=p, c=result.constant))

    # κ is integrable for every α but square integrable only for α > 1/2
    kernel = poincare_ratio(kernel_function(grid, s.alpha), s.alpha, 1.0)
    reports.append(_gate("poincare-kernel-flag", kernel.kernel_element,
                         kernel.numerator, s.tol("ftfc"), c=kernel.constant))
    return reports


def pollution_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    phi = sample(lambda x: bump(x, 0.5, 0.25), grid)
    expected = -(1.0 + s.alpha)
    reports = []
    for direction in Direction:
        distances = np.geomspace(2.0, 100.0, 40)
        source = phi if direction is Direction.Left else phi.mirrored()
        slope = pollution_slope(source, s.alpha, direction, distances)
        reports.append(ResidualReport.build(
            f"pollution-slope[{direction.value}]", abs(slope / expected - 1.0),
            s.tol("pollution"), slope=slope, expected=expected))

    tail = np.abs(pollution_tail(phi, s.alpha, Direction.Left, grid.b + np.linspace(0.5, 50.0, 200)))
    increases = float(np.max(np.diff(tail), initial=0.0))
    reports.append(_gate("pollution-monotone", increases <= 0.0, max(increases, 0.0), 0.0))
    return reports


def extensions_suite(s: SuiteSettings) -> list[ResidualReport]:
    grid = s.unit_grid()
    one = sample(lambda x: 1.0 + 0.0 * x, grid)
    reports = []

    accepted = exterior_extension(one, 0.25, 2.0, 8.0)
    core = accepted.extended.values[grid.n:2 * grid.n + 1]
    reports.append(_gate(
        "exterior-accept", math.isfinite(accepted.norm_ratio) and np.array_equal(core, one.values),
        0.0, 0.0, norm_ratio=accepted.norm_ratio))

    for name, args, code in (("alpha-p", (0.6, 2.0, 8.0), "ALPHA_P"),
                             ("mu", (0.25, 2.0, 4.0), "MU_TOO_SMALL")):
        try:
            exterior_extension(one, *args)
            raised = None
        except ExtensionConditionError as exc:
            raised = exc.code
        reports.append(_gate(f"exterior-reject[{name}]", raised == code, 0.0, 0.0))

    u = sample(lambda x: bump(x, 0.5, 0.25), grid)
    trivial = trivial_extension(u, 1.0, SobolevSpec(s.alpha, 2.0))
    m = (trivial.extended.grid.n - grid.n) // 2
    agrees = np.array_equal(trivial.extended.values[m:m + grid.n + 1], u.values)
    reports.append(_gate("trivial-extension", agrees and math.isfinite(trivial.norm_ratio),
                         0.0, 0.0, norm_ratio=trivial.norm_ratio))
    return reports


SUITES: dict[Suite, Callable[[SuiteSettings], list[ResidualReport]]] = {
    Suite.Ftfc: ftfc_suite,
    Suite.Product: product_suite,
    Suite.Chain: chain_suite,
    Suite.Ibp: ibp_suite,
    Suite.Weak: weak_suite,
    Suite.Mollify: mollify_suite,
    Suite.Equivalences: equivalences_suite,
    Suite.Sobolev: sobolev_suite,
    Suite.Poincare: poincare_suite,
    Suite.Pollution: pollution_suite,
    Suite.Extensions: extensions_suite,
}




# }}}


def thread_cap() -> int:
    """Worker count from ``FRACALC_THREADS``, defaulting to the CPU count."""
    raw = os.environ.get("FRACALC_THREADS")
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"FRACALC_THREADS must be a positive integer (got '{raw}')") from None
    if value < 1:
        raise ConfigError(f"FRACALC_THREADS must be a positive integer (got '{raw}')")
    return value


def run_suite(suite: Suite, settings: SuiteSettings) -> list[ResidualReport]:
    """Run one suite; a numerical precondition failure becomes a failing
    report carrying the error message."""
    try:
        return SUITES[suite](settings)
    except (FracalcError, OverflowError) as exc:
        return [ResidualReport(f"{suite.value}-precondition", 0.0, 0.0, False,
                               message=str(exc))]


def run_suites(
    suites: list[Suite], settings: SuiteSettings, threads: int | None = None
) -> dict[str, list[ResidualReport]]:
    """Run *suites*, concurrently up to *threads*; results keep suite order."""
    workers = max(1, min(threads or thread_cap(), len(suites)))
    if workers == 1:
        results = [run_suite(suite, settings) for suite in suites]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda suite: run_suite(suite, settings), suites))
    return {suite.value: reports for suite, reports in zip(suites, results)}
