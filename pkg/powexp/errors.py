class PowexpError(Exception):
    """Base class for every error raised by powexp"""

    kind = "error"


class DomainError(PowexpError, ValueError):
    kind = "domain-error"


class DivergentIntegral(DomainError):
    kind = "divergent-integral"


class SeriesOverflow(PowexpError, OverflowError):
    kind = "overflow"


class ExactOverflow(PowexpError, OverflowError):
    kind = "exact-overflow"


class DepthExceeded(PowexpError, ArithmeticError):
    """Adaptive quadrature ran out of depth. Carries the best estimate."""

    kind = "depth-exceeded"

    def __init__(self, message, value, est_error):
        super().__init__(message)
        self.value = value
        self.est_error = est_error


class MissingMoment(PowexpError, KeyError):
    kind = "missing-moment"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ZeroDenominator(PowexpError, ZeroDivisionError):
    kind = "zero-denominator"


class EmptyData(PowexpError, ValueError):
    kind = "empty-data"


class DimensionMismatch(PowexpError, ValueError):
    kind = "dimension-mismatch"


class GridContainsZero(PowexpError, ValueError):
    kind = "grid-contains-zero"


class DataError(PowexpError, ValueError):
    """A sample file that can't be read or holds a non-numeric token"""

    kind = "data-error"
