"""Exception classes shared across the package."""


class BernlatError(Exception):
    """Base class for package-specific failures."""


class BoundaryNotIntegerError(BernlatError):
    """An endpoint value of f is not within tolerance of any integer."""


class NonFiniteError(BernlatError):
    """A function evaluation produced NaN or infinity."""


class StructuralViolationError(BernlatError):
    """The rounding recurrence violated a boundary-locking guarantee.

    Signals numerical accumulation beyond the residue tolerance; the
    quantized output can no longer be trusted to interpolate the
    endpoints.
    """


class CutoffOutOfRangeError(BernlatError):
    """Cutoff t outside the admissible range [0, floor(n/2)]."""


class SearchSpaceTooLargeError(BernlatError):
    """Brute-force enumeration refused: candidate count too large."""


class EstimateOnlyModulusError(BernlatError):
    """A theoretical bound was requested with an empirically estimated
    modulus; the estimate is a lower bound on the true modulus, so the
    assertion would be unsound."""


class ParseError(BernlatError):
    """Expression syntax error.  Carries a 0-based byte offset."""

    def __init__(self, offset, expected):
        self.offset = offset
        self.expected = expected
        super().__init__(f"parse error at offset {offset}: expected {expected}")
