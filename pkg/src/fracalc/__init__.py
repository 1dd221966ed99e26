"""Numerical fractional calculus with closed-form and identity checks."""

from fracalc.calculus import (
    ResidualReport,
    chain_rule_check,
    ftfc_constant,
    ftfc_reconstruct,
    ibp_residual,
    mollifier_commutation,
    product_rule_check,
    weak_derivative_verify,
)
from fracalc.core import (
    Direction,
    DomainKind,
    Family,
    Grid,
    SampledFunction,
    gamma,
    gl_weights,
    lp_norm,
    make_uniform_grid,
    reciprocal_gamma,
    sample,
)
from fracalc.operators import (
    FracSpec,
    OperatorResult,
    apply,
    caputo_derivative,
    fourier_derivative,
    gl_derivative,
    kernel_function,
    rl_derivative,
    rl_integral,
)
from fracalc.sobolev import (
    Side,
    SobolevSpec,
    exterior_extension,
    fourier_seminorm,
    frac_sobolev_norm,
    gagliardo_seminorm,
    h_alpha_equivalence_ratio,
    poincare_ratio,
    pollution_tail,
    sobolev_conjugate_check,
    trace,
    trivial_extension,
)

__all__ = [
    "Direction", "DomainKind", "Family", "FracSpec", "Grid", "OperatorResult",
    "ResidualReport", "SampledFunction", "Side", "SobolevSpec",
    "apply", "caputo_derivative", "chain_rule_check", "exterior_extension",
    "fourier_derivative", "fourier_seminorm", "frac_sobolev_norm", "ftfc_constant",
    "ftfc_reconstruct", "gagliardo_seminorm", "gamma", "gl_derivative", "gl_weights",
    "h_alpha_equivalence_ratio", "ibp_residual", "kernel_function", "lp_norm",
    "make_uniform_grid", "mollifier_commutation", "poincare_ratio", "pollution_tail",
    "product_rule_check", "reciprocal_gamma", "rl_derivative", "rl_integral", "sample",
    "sobolev_conjugate_check", "trace", "trivial_extension", "weak_derivative_verify",
]
