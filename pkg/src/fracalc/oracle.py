"""Closed-form reference values for the fractional operators."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from fracalc.core import Direction, gamma, reciprocal_gamma
from fracalc.errors import PreconditionError


class OracleKind(enum.Enum):
    PowerLaw = "power-law"
    Constant = "constant"
    StepFunction = "step"
    KernelFunction = "kernel"
    GaussianLine = "gaussian-line"


class Query(enum.Enum):
    Value = "value"
    RLIntegral = "rl-integral"
    RLDerivative = "rl-derivative"


class _NoClosedForm:
    """Sentinel answer for queries without a closed form."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NO_CLOSED_FORM"

    def __bool__(self) -> bool:
        return False


NO_CLOSED_FORM = _NoClosedForm()


KERNEL_EXPONENT_TOLERANCE = 1e-12


def _distance(x, a: float, b: float, direction: Direction):
    x = np.asarray(x, dtype=np.float64)
    return x - a if direction is Direction.Left else b - x


def power_law_derivative(
    mu: float, alpha: float, direction: Direction = Direction.Left,
    a: float = 0.0, b: float = 1.0,
) -> Callable[[np.ndarray], np.ndarray]:
    r"""Exact RL derivative of :math:`(x - a)^\mu` (left) or :math:`(b - x)^\mu`
    (right), i.e. :math:`\Gamma(\mu + 1) / \Gamma(\mu + 1 - \alpha)
    t^{\mu - \alpha}`. Vanishes identically for :math:`\mu = \alpha - 1`.
    """
    if not mu > -1.0:
        raise PreconditionError(f"power law needs μ > -1 (got μ={mu})")
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"derivative order must satisfy 0<α<1 (got {alpha})")

    shifted = mu + 1.0 - alpha
    # μ = α - 1 is the kernel exponent; snap roundoff so it is annihilated exactly
    if abs(shifted) <= KERNEL_EXPONENT_TOLERANCE:
        shifted = 0.0
    coeff = gamma(mu + 1.0) * reciprocal_gamma(shifted)

    def evaluate(x):
        t = _distance(x, a, b, direction)
        if coeff == 0.0:
            return np.zeros_like(t)
        with np.errstate(divide="ignore"):
            return coeff * t ** (mu - alpha)

    return evaluate


def power_law_integral(
    mu: float, sigma: float, direction: Direction = Direction.Left,
    a: float = 0.0, b: float = 1.0,
) -> Callable[[np.ndarray], np.ndarray]:
    r"""Exact RL integral :math:`\Gamma(\mu + 1) / \Gamma(\mu + 1 + \sigma)
    t^{\mu + \sigma}` of the power law."""
    if not mu > -1.0:
        raise PreconditionError(f"power law needs μ > -1 (got μ={mu})")
    if not sigma > 0.0:
        raise PreconditionError(f"integral order must be positive (got {sigma})")

    coeff = gamma(mu + 1.0) * reciprocal_gamma(mu + 1.0 + sigma)

    def evaluate(x):
        t = _distance(x, a, b, direction)
        with np.errstate(divide="ignore"):
            return coeff * t ** (mu + sigma)

    return evaluate


def step_weak_derivative(
    lam: float, mu: float, alpha: float, direction: Direction = Direction.Left
) -> Callable[[np.ndarray], np.ndarray]:
    r"""Left weak derivative on :math:`(-1, 1)` of the step equal to
    :math:`\lambda` on :math:`(-1, 0)` and :math:`\mu` on :math:`(0, 1)`.

    The value at the jump is ``inf`` when :math:`\lambda \ne \mu`, so that
    :func:`fracalc.core.sample` excludes that node.
    """
    if direction is not Direction.Left:
        raise PreconditionError("the step formula is stated for the left direction")
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"derivative order must satisfy 0<α<1 (got {alpha})")

    rg = reciprocal_gamma(1.0 - alpha)

    def evaluate(x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = lam * (x + 1.0) ** (-alpha)
            jump = np.where(x > 0.0, (mu - lam) * np.abs(x) ** (-alpha), 0.0)
            # unbounded at the jump itself
            jump = np.where((x == 0.0) & (mu != lam), np.inf, jump)
        return rg * (out + jump)

    return evaluate


@dataclass(frozen=True)
class OracleCase:
    """A closed-form test function.

    Parameter keys by kind:

    * ``PowerLaw``: ``mu``, ``a``, ``b``, optional ``scale``
    * ``Constant``: ``c``, ``a``, ``b``
    * ``StepFunction``: ``lambda``, ``mu`` (domain ``(-1, 1)``)
    * ``KernelFunction``: ``alpha``, ``a``, ``b``
    * ``GaussianLine``: ``width``
    """

    kind: OracleKind
    params: dict[str, float] = field(default_factory=dict)
    direction: Direction = Direction.Left

    def _p(self, key: str, default: float | None = None) -> float:
        if key in self.params:
            return float(self.params[key])
        if default is None:
            raise PreconditionError(f"oracle case {self.kind.value} needs '{key}'")
        return default

    @property
    def domain(self) -> tuple[float, float]:
        if self.kind is OracleKind.StepFunction:
            return (-1.0, 1.0)
        if self.kind is OracleKind.GaussianLine:
            return (-math.inf, math.inf)
        return (self._p("a", 0.0), self._p("b", 1.0))

    def _as_power_law(self) -> tuple[float, float]:
        """(exponent, scale) of cases that are scaled power laws."""
        if self.kind is OracleKind.PowerLaw:
            return self._p("mu"), self._p("scale", 1.0)
        if self.kind is OracleKind.Constant:
            return 0.0, self._p("c")
        if self.kind is OracleKind.KernelFunction:
            return self._p("alpha") - 1.0, 1.0
        raise AssertionError

    def value(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind is OracleKind.GaussianLine:
            return np.exp(-0.5 * (x / self._p("width", 1.0)) ** 2)
        if self.kind is OracleKind.StepFunction:
            lam, mu = self._p("lambda"), self._p("mu")
            return np.where(x < 0.0, lam, np.where(x > 0.0, mu, 0.5 * (lam + mu)))

        a, b = self.domain
        mu, scale = self._as_power_law()
        t = _distance(x, a, b, self.direction)
        with np.errstate(divide="ignore"):
            return scale * t**mu

    def rl_integral(self, x, sigma: float):
        if self.kind is OracleKind.GaussianLine:
            return NO_CLOSED_FORM
        if self.kind is OracleKind.StepFunction:
            if self.direction is not Direction.Left:
                return NO_CLOSED_FORM
            x = np.asarray(x, dtype=np.float64)
            lam, mu = self._p("lambda"), self._p("mu")
            rg = reciprocal_gamma(1.0 + sigma)
            return rg * (lam * (x + 1.0) ** sigma
                         + (mu - lam) * np.maximum(x, 0.0) ** sigma)

        a, b = self.domain
        mu, scale = self._as_power_law()
        return scale * power_law_integral(mu, sigma, self.direction, a, b)(x)

    def rl_derivative(self, x, alpha: float):
        if self.kind is OracleKind.GaussianLine:
            return NO_CLOSED_FORM
        if self.kind is OracleKind.StepFunction:
            if self.direction is not Direction.Left:
                return NO_CLOSED_FORM
            return step_weak_derivative(
                self._p("lambda"), self._p("mu"), alpha)(x)

        a, b = self.domain
        mu, scale = self._as_power_law()
        if scale == 0.0:
            return np.zeros_like(np.asarray(x, dtype=float))
        return scale * power_law_derivative(mu, alpha, self.direction, a, b)(x)

    def formula(self) -> str:
        side = "x - a" if self.direction is Direction.Left else "b - x"
        return {
            OracleKind.PowerLaw: f"scale*({side})^mu",
            OracleKind.Constant: "c",
            OracleKind.StepFunction: "lambda on (-1,0), mu on (0,1)",
            OracleKind.KernelFunction: f"({side})^(alpha-1)",
            OracleKind.GaussianLine: "exp(-x^2/(2 width^2))",
        }[self.kind]

    def to_json_dict(self) -> dict:
        lo, hi = self.domain
        return {
            "kind": self.kind.value,
            "params": dict(sorted(self.params.items())),
            "direction": self.direction.value,
            "formula": self.formula(),
            "domain": [lo if math.isfinite(lo) else None,
                       hi if math.isfinite(hi) else None],
            "closed_forms": [q.value for q in Query
                             if self.kind is not OracleKind.GaussianLine
                             or q is Query.Value],
        }


def reference(case: OracleCase, query: Query, point: float, order: float = 0.0):
    """Exact value of *query* for *case* at *point*, or :data:`NO_CLOSED_FORM`."""
    lo, hi = case.domain
    if not lo <= point <= hi:
        raise PreconditionError(f"point {point} lies outside the domain [{lo}, {hi}]")

    if query is Query.Value:
        result = case.value(point)
    elif query is Query.RLIntegral:
        result = case.rl_integral(point, order)
    else:
        result = case.rl_derivative(point, order)

    if result is NO_CLOSED_FORM:
        return NO_CLOSED_FORM
    return float(result)


def catalog() -> list[OracleCase]:
    """Representative cases for documentation dumps."""
    return [
        OracleCase(OracleKind.PowerLaw, {"mu": 0.5, "a": 0.0, "b": 1.0}),
        OracleCase(OracleKind.Constant, {"c": 1.0, "a": 0.0, "b": 1.0}),
        OracleCase(OracleKind.StepFunction, {"lambda": 0.0, "mu": 1.0}),
        OracleCase(OracleKind.KernelFunction, {"alpha": 0.5, "a": 0.0, "b": 1.0}),
        OracleCase(OracleKind.GaussianLine, {"width": 1.0}),
    ]


def catalog_json() -> str:
    return json.dumps([c.to_json_dict() for c in catalog()], indent=2, sort_keys=True)
