"""Exception hierarchy shared across the package."""


class ChordsectError(Exception):
    """Base class for all errors raised by this package."""


class ExpressionError(ChordsectError):
    """Malformed or unsupported expression text.

    Carries the byte offset into the source text where parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalDomainError(ChordsectError):
    """Evaluation hit a point where the expression is not finite and smooth."""


class CurveError(ChordsectError):
    """Invalid curve construction or evaluation outside the curve domain."""


class CurveSpecError(CurveError):
    """Malformed curve-spec JSON (unknown kind or name, bad keys or values)."""


class SectionError(ChordsectError):
    """The requested chord section does not exist within the curve domain."""


class RootFindError(ChordsectError):
    """A bracketed root search failed to converge."""


class QuadratureError(ChordsectError):
    """Adaptive quadrature could not meet the requested tolerance."""


class ExtrapolationError(ChordsectError):
    """Limit extrapolation failed (sample evaluation or ill-conditioned fit)."""
