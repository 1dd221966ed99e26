"""Grids, sampled functions, the Gamma function and sample norms."""

from __future__ import annotations

import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from fracalc.errors import PreconditionError


class DomainKind(enum.Enum):
    FiniteInterval = "finite"
    TruncatedLine = "line"


class Direction(enum.Enum):
    Left = "left"
    Right = "right"

    @property
    def opposite(self) -> Direction:
        return Direction.Right if self is Direction.Left else Direction.Left


class Family(enum.Enum):
    RiemannLiouville = "rl"
    Caputo = "caputo"
    GrunwaldLetnikov = "gl"
    Fourier = "fourier"
    WeakCaputo = "weak-caputo"


# {{{ grid


@dataclass(frozen=True)
class Grid:
    """Uniform grid with ``n`` intervals (``n + 1`` nodes) on ``[a, b]``."""

    a: float
    b: float
    n: int
    kind: DomainKind = DomainKind.FiniteInterval

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise PreconditionError("grid endpoints must be finite")
        if not self.a < self.b:
            raise PreconditionError(f"grid requires a < b (got a={self.a}, b={self.b})")
        if int(self.n) != self.n or self.n < 2:
            raise PreconditionError(f"grid requires an integer n >= 2 (got {self.n})")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def length(self) -> float:
        return self.b - self.a

    def node(self, i: int) -> float:
        if not 0 <= i <= self.n:
            raise IndexError(f"node index {i} outside 0..{self.n}")
        return self.a + i * self.h

    @property
    def x(self) -> np.ndarray:
        return self.a + np.arange(self.n + 1) * self.h

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b, "n": self.n, "kind": self.kind.value}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Grid:
        return cls(float(data["a"]), float(data["b"]), int(data["n"]),
                   DomainKind(data.get("kind", "finite")))


def make_uniform_grid(
    a: float, b: float, n: int, kind: DomainKind = DomainKind.FiniteInterval
) -> Grid:
    return Grid(float(a), float(b), int(n), kind)


# }}}


# {{{ sampled functions


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples of a real function on a grid.

    Nodes listed in *excluded* carry no meaningful value (typically an
    integrable endpoint singularity); they are stored as ``nan``.
    """

    grid: Grid
    values: np.ndarray
    excluded: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.grid.n + 1,):
            raise PreconditionError(
                f"expected {self.grid.n + 1} samples, got shape {values.shape}")

        excluded = frozenset(int(i) for i in self.excluded)
        if any(not 0 <= i <= self.grid.n for i in excluded):
            raise PreconditionError("excluded node index out of range")

        mask = np.zeros(values.shape, dtype=bool)
        mask[list(excluded)] = True
        if not np.all(np.isfinite(values[~mask])):
            raise PreconditionError("non-excluded samples must be finite")

        values[mask] = np.nan
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "excluded", excluded)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def mask(self) -> np.ndarray:
        """Boolean array, true at the usable (non-excluded) nodes."""
        m = np.ones(self.grid.n + 1, dtype=bool)
        m[list(self.excluded)] = False
        return m

    def filled(self, value: float = 0.0) -> np.ndarray:
        """A writable copy of the samples with excluded nodes set to *value*."""
        out = np.array(self.values)
        out[~self.mask] = value
        return out

    def with_values(self, values: np.ndarray, excluded=None) -> SampledFunction:
        return SampledFunction(
            self.grid, values, self.excluded if excluded is None else excluded)

    def mirrored(self) -> SampledFunction:
        """Reflection about the interval midpoint."""
        n = self.grid.n
        return SampledFunction(
            self.grid, self.values[::-1], frozenset(n - i for i in self.excluded))

    def __add__(self, other: SampledFunction) -> SampledFunction:
        _check_same_grid(self, other)
        return SampledFunction(
            self.grid, self.filled() + other.filled(), self.excluded | other.excluded)

    def __sub__(self, other: SampledFunction) -> SampledFunction:
        return self + (-1.0) * other

    def __mul__(self, other) -> SampledFunction:
        if isinstance(other, SampledFunction):
            _check_same_grid(self, other)
            return SampledFunction(
                self.grid, self.filled() * other.filled(),
                self.excluded | other.excluded)
        return SampledFunction(self.grid, self.filled() * float(other), self.excluded)

    __rmul__ = __mul__

    def __neg__(self) -> SampledFunction:
        return (-1.0) * self

    # {{{ serialization

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "grid": self.grid.to_dict(),
            "values": [None if not m else float(v)
                       for v, m in zip(self.values, self.mask)],
            "excluded": sorted(self.excluded),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> SampledFunction:
        data = json.loads(text)
        values = np.array([np.nan if v is None else v for v in data["values"]],
                          dtype=np.float64)
        return cls(Grid.from_dict(data["grid"]), values, frozenset(data["excluded"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,value\n")
        for xi, vi, m in zip(self.x, self.values, self.mask):
            if m:
                buf.write(f"{float(xi)!r},{float(vi)!r}\n")
        return buf.getvalue()

    # }}}


def _check_same_grid(f: SampledFunction, g: SampledFunction) -> None:
    if f.grid != g.grid:
        raise PreconditionError("sampled functions live on different grids")


def sample(
    func, grid: Grid, excluded=None
) -> SampledFunction:
    """Evaluate a vectorized callable on *grid*.

    Nodes where the callable returns a non-finite value are excluded
    automatically, in addition to any indices given in *excluded*.
    """
    x = grid.x
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.asarray(func(x), dtype=np.float64) * np.ones_like(x)

    bad = set(np.flatnonzero(~np.isfinite(values)).tolist())
    if excluded is not None:
        bad |= {int(i) for i in excluded}

    return SampledFunction(grid, values, frozenset(bad))


# }}}


# {{{ gamma

# Lanczos coefficients for g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
GAMMA_OVERFLOW_THRESHOLD = 171.6


def _is_nonpositive_integer(x: np.ndarray) -> np.ndarray:
    return (x <= 0) & (x == np.floor(x))


def _gamma_positive(x: np.ndarray) -> np.ndarray:
    # valid for x >= 0.5
    z = x - 1.0
    series = np.full_like(z, _LANCZOS_COEFFS[0])
    for k, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series = series + c / (z + k)

    t = z + _LANCZOS_G + 0.5
    # split the power so that t**(z + 0.5) does not overflow near x = 171
    half = t ** ((z + 0.5) / 2.0)
    return math.sqrt(2.0 * math.pi) * half * (np.exp(-t) * half) * series


def _gamma_array(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)

    big = x >= 0.5
    out[big] = _gamma_positive(x[big])

    small = ~big
    if np.any(small):
        xs = x[small]
        # reflection formula
        out[small] = math.pi / (np.sin(math.pi * xs) * _gamma_positive(1.0 - xs))

    return out


def gamma(x):
    """Gamma function via the Lanczos approximation.

    Raises :class:`OverflowError` above :data:`GAMMA_OVERFLOW_THRESHOLD` and
    :class:`PreconditionError` at the poles (non-positive integers).
    """
    xa = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(xa)):
        raise PreconditionError("gamma requires finite arguments")
    if np.any(xa > GAMMA_OVERFLOW_THRESHOLD):
        raise OverflowError(
            f"gamma overflows for x > {GAMMA_OVERFLOW_THRESHOLD}")
    if np.any(_is_nonpositive_integer(xa)):
        raise PreconditionError(
            "gamma has a pole at non-positive integers; use reciprocal_gamma")

    out = _gamma_array(np.atleast_1d(xa))
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def reciprocal_gamma(x):
    """``1 / Γ(x)``, equal to exactly zero at the non-positive integers."""
    xa = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(xa)):
        raise PreconditionError("reciprocal_gamma requires finite arguments")

    flat = np.atleast_1d(xa)
    out = np.zeros_like(flat)

    poles = _is_nonpositive_integer(flat)
    huge = flat > GAMMA_OVERFLOW_THRESHOLD
    regular = ~poles & ~huge
    out[regular] = 1.0 / _gamma_array(flat[regular])

    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


# }}}


# {{{ GL weights


def gl_weights(alpha: float, k_max: int) -> np.ndarray:
    r"""Grünwald-Letnikov weights :math:`(-1)^k \binom{\alpha}{k}` for
    :math:`0 \le k \le k_{max}`, from the recurrence
    :math:`w_k = w_{k - 1} (k - 1 - \alpha) / k`.
    """
    if not 0.0 < alpha < 1.0:
        raise PreconditionError(f"GL requires 0<α<1 (got α={alpha})")
    if k_max < 0:
        raise PreconditionError("k_max must be non-negative")

    k = np.arange(1, k_max + 1, dtype=np.float64)
    w = np.empty(k_max + 1)
    w[0] = 1.0
    w[1:] = np.cumprod((k - 1.0 - alpha) / k)
    return w


# }}}


# {{{ norms


def trapezoid_weights(grid: Grid, mask: np.ndarray | None = None) -> np.ndarray:
    """Composite trapezoid weights; masked-out nodes get zero weight."""
    w = np.full(grid.n + 1, grid.h)
    w[0] = w[-1] = grid.h / 2.0
    if mask is not None:
        w = np.where(mask, w, 0.0)
    return w


def lp_norm(f: SampledFunction, p: float) -> float:
    """Composite-trapezoid :math:`L^p` norm skipping excluded nodes."""
    if not p >= 1.0:
        raise PreconditionError(f"lp_norm requires p >= 1 (got p={p})")

    mask = f.mask
    absf = np.abs(f.filled())
    if math.isinf(p):
        return float(np.max(absf[mask])) if np.any(mask) else 0.0

    w = trapezoid_weights(f.grid, mask)
    scale = float(np.max(absf)) if absf.size else 0.0
    if scale == 0.0:
        return 0.0

    # scale first so that large p does not overflow
    return scale * float(np.sum(w * (absf / scale) ** p)) ** (1.0 / p)


def integrate(f: SampledFunction) -> float:
    """Composite-trapezoid integral skipping excluded nodes."""
    return float(np.sum(trapezoid_weights(f.grid, f.mask) * f.filled()))


# }}}
