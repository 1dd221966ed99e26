"""A closed vocabulary of test functions for the command line.

A spec is a sum of terms, each optionally scaled::

    power:0.5
    2*bump:0.5,0.2 + -1*constant:1
    kernel:0.25

Term kinds and parameters:

* ``power:mu``: ``(x - a)^mu``
* ``rpower:mu``: ``(b - x)^mu``
* ``constant:c``
* ``step:lam,mu``: ``lam`` left of 0, ``mu`` right of it, their mean at 0
* ``bump:center,radius``: smooth compactly supported bump
* ``gaussian:width``: ``exp(-x^2 / (2 width^2))``
* ``kernel:alpha`` and ``rkernel:alpha``: ``(x - a)^(alpha - 1)`` and ``(b - x)^(alpha - 1)``
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from fracalc.calculus import bump
from fracalc.core import Direction, DomainKind, Grid, SampledFunction, sample
from fracalc.errors import ConfigError
from fracalc.oracle import OracleCase, OracleKind


class TermKind(enum.Enum):
    Power = "power"
    RightPower = "rpower"
    Constant = "constant"
    Step = "step"
    Bump = "bump"
    Gaussian = "gaussian"
    Kernel = "kernel"
    RightKernel = "rkernel"


_ARITY = {
    TermKind.Power: 1,
    TermKind.RightPower: 1,
    TermKind.Constant: 1,
    TermKind.Step: 2,
    TermKind.Bump: 2,
    TermKind.Gaussian: 1,
    TermKind.Kernel: 1,
    TermKind.RightKernel: 1,
}

# '+' separates terms unless it is the sign of an exponent
_TERM_SEPARATOR = re.compile(r"(?<![eE])\+")


@dataclass(frozen=True)
class Term:
    kind: TermKind
    params: tuple[float, ...]
    scale: float = 1.0

    def __post_init__(self) -> None:
        if len(self.params) != _ARITY[self.kind]:
            raise ConfigError(
                f"'{self.kind.value}' takes {_ARITY[self.kind]} parameter(s), "
                f"got {len(self.params)}")
        if not all(math.isfinite(v) for v in (*self.params, self.scale)):
            raise ConfigError(f"'{self.kind.value}' parameters must be finite")
        if self.kind in (TermKind.Power, TermKind.RightPower) and not self.params[0] > -1.0:
            raise ConfigError(f"power exponent must exceed -1 (got {self.params[0]})")
        if self.kind in (TermKind.Kernel, TermKind.RightKernel) and not 0.0 < self.params[0] < 1.0:
            raise ConfigError(f"kernel order must lie in (0, 1) (got {self.params[0]})")
        if self.kind is TermKind.Bump and not self.params[1] > 0.0:
            raise ConfigError("bump radius must be positive")
        if self.kind is TermKind.Gaussian and not self.params[0] > 0.0:
            raise ConfigError("gaussian width must be positive")

    def evaluate(self, x: np.ndarray, a: float, b: float) -> np.ndarray:
        p = self.params
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.kind is TermKind.Power:
                out = (x - a) ** p[0]
            elif self.kind is TermKind.RightPower:
                out = (b - x) ** p[0]
            elif self.kind is TermKind.Constant:
                out = np.full_like(x, p[0])
            elif self.kind is TermKind.Step:
                out = np.where(x < 0.0, p[0], np.where(x > 0.0, p[1], 0.5 * (p[0] + p[1])))
            elif self.kind is TermKind.Bump:
                out = bump(x, p[0], p[1])
            elif self.kind is TermKind.Gaussian:
                out = np.exp(-0.5 * (x / p[0]) ** 2)
            elif self.kind is TermKind.Kernel:
                out = (x - a) ** (p[0] - 1.0)
            else:
                out = (b - x) ** (p[0] - 1.0)
        return self.scale * out

    def __str__(self) -> str:
        body = f"{self.kind.value}:{','.join(repr(v) for v in self.params)}"
        return body if self.scale == 1.0 else f"{self.scale!r}*{body}"


@dataclass(frozen=True)
class FunctionSpec:
    terms: tuple[Term, ...]

    @classmethod
    def parse(cls, text: str) -> FunctionSpec:
        text = text.strip()
        if not text:
            raise ConfigError("empty function spec")
        return cls(tuple(_parse_term(chunk) for chunk in _TERM_SEPARATOR.split(text)))

    def __str__(self) -> str:
        return "+".join(str(t) for t in self.terms)

    def evaluate(self, grid: Grid) -> SampledFunction:
        """Samples on *grid*; nodes where a term is infinite are excluded."""
        return sample(
            lambda x: sum(t.evaluate(x, grid.a, grid.b) for t in self.terms), grid)

    def oracle(self, grid: Grid) -> OracleCase | None:
        """The closed-form case matching a single-term spec, if any."""
        if len(self.terms) != 1:
            return None
        term = self.terms[0]
        p, s = term.params, term.scale
        ends = {"a": grid.a, "b": grid.b}
        if term.kind in (TermKind.Power, TermKind.RightPower):
            direction = Direction.Left if term.kind is TermKind.Power else Direction.Right
            return OracleCase(OracleKind.PowerLaw, {"mu": p[0], "scale": s, **ends}, direction)
        if term.kind is TermKind.Constant:
            return OracleCase(OracleKind.Constant, {"c": s * p[0], **ends})
        if term.kind in (TermKind.Kernel, TermKind.RightKernel) and s == 1.0:
            direction = Direction.Left if term.kind is TermKind.Kernel else Direction.Right
            return OracleCase(OracleKind.KernelFunction, {"alpha": p[0], **ends}, direction)
        if term.kind is TermKind.Step and s == 1.0 and (grid.a, grid.b) == (-1.0, 1.0):
            return OracleCase(OracleKind.StepFunction, {"lambda": p[0], "mu": p[1]})
        return None


def _parse_term(chunk: str) -> Term:
    chunk = chunk.strip()
    scale = 1.0
    if "*" in chunk:
        factor, _, chunk = chunk.partition("*")
        scale = _number(factor)
        chunk = chunk.strip()

    name, sep, args = chunk.partition(":")
    try:
        kind = TermKind(name.strip())
    except ValueError:
        known = ", ".join(k.value for k in TermKind)
        raise ConfigError(f"unknown function '{name.strip()}' (expected one of {known})") from None
    if not sep:
        raise ConfigError(f"'{kind.value}' needs parameters, e.g. '{kind.value}:1'")
    params = tuple(_number(v) for v in args.split(","))
    return Term(kind, params, scale)


def _number(text: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise ConfigError(f"not a number: '{text.strip()}'") from None


def parse_domain(text: str) -> Grid:
    """``a,b,n`` with an optional fourth field ``finite`` or ``line``."""
    fields = [f.strip() for f in text.split(",")]
    if len(fields) not in (3, 4):
        raise ConfigError(f"domain must be 'a,b,n[,kind]' (got '{text}')")
    a, b = _number(fields[0]), _number(fields[1])
    try:
        n = int(fields[2])
    except ValueError:
        raise ConfigError(f"grid size must be an integer (got '{fields[2]}')") from None
    try:
        kind = DomainKind(fields[3]) if len(fields) == 4 else DomainKind.FiniteInterval
    except ValueError:
        raise ConfigError(f"domain kind must be 'finite' or 'line' (got '{fields[3]}')") from None
    if not (math.isfinite(a) and math.isfinite(b) and a < b and n >= 2):
        raise ConfigError(f"domain needs finite a < b and n >= 2 (got '{text}')")
    return Grid(a, b, n, kind)
