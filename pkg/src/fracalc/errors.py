"""Exception types.

Every error raised by the library derives from :class:`FracalcError`, so the
command-line front end can map them all to the "numerical precondition"
exit code.
"""

from __future__ import annotations


class FracalcError(Exception):
    """Base class for all library errors."""


class PreconditionError(FracalcError, ValueError):
    """An input violates a documented precondition."""


class TruncationUnsafeError(FracalcError):
    """A function on a truncated line has not decayed at the window ends."""


class MissingBoundaryValueError(FracalcError):
    """The endpoint sample is excluded and no boundary value was supplied."""


class ExtrapolationError(FracalcError):
    """An endpoint limit could not be extrapolated stably."""


class ImaginaryResidueError(FracalcError):
    """The spectral derivative left a large imaginary part."""


class ExtensionConditionError(FracalcError):
    """An extension operator was called outside its admissible exponents.

    The :attr:`code` attribute names the violated condition.
    """

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"[{code}] {message}")
        self.code = code


class ConfigError(Exception):
    """A run configuration or function spec is malformed.

    Deliberately not a :class:`FracalcError`: the command-line front end
    maps it to its own exit code.
    """
