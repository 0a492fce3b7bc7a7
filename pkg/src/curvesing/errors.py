"""Exception hierarchy shared by the engine and the CLI.

Each class carries an ``exit_code`` so the command line front end can map
engine failures to process status without a lookup table.
"""
from __future__ import annotations


class CurvesingError(Exception):
    exit_code = 2


class ParseError(CurvesingError):
    """Malformed expression or document."""

    exit_code = 2

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FieldMismatch(CurvesingError):
    exit_code = 2


class PointNotOnCurve(CurvesingError):
    exit_code = 2


class NotMaximal(CurvesingError):
    exit_code = 2


class NonReduced(CurvesingError):
    exit_code = 2

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ZeroBranch(CurvesingError):
    exit_code = 2


class DegeneratePencilParameter(CurvesingError):
    exit_code = 2


class ExtensionRequired(CurvesingError):
    """A deeper p-th-root tower (or an unsupported extension) is needed.

    ``depth`` is the root depth that would make progress, or ``None`` when
    the obstruction is a separable extension of a function field, which is
    outside what the engine can construct.
    """

    exit_code = 3

    def __init__(self, message: str, depth: int | None = None):
        self.depth = depth
        super().__init__(message)


class NotAPthPower(ExtensionRequired):
    def __init__(self, needed_depth: int):
        self.needed_depth = needed_depth
        super().__init__(
            f"element is not a p-th power; raise root_depth to {needed_depth}",
            depth=needed_depth,
        )


class UnsupportedField(CurvesingError):
    exit_code = 3


class DepthExceeded(ExtensionRequired):
    """The p-th-root tower needed exceeds the allowed ``max_depth``."""


class NotStabilized(CurvesingError):
    exit_code = 4

    def __init__(self, nmax: int, what: str = "jet colength"):
        self.nmax = nmax
        super().__init__(f"{what} did not stabilize below Nmax={nmax}; raise --jet-max")


class ParityViolation(CurvesingError):
    """C^2 + K.C must be even for the arithmetic genus to be an integer."""

    exit_code = 2
