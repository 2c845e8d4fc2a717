"""
Independent ground truth numerics: adaptive Simpson quadrature and a high
precision gamma function. Everything else in powexp is checked against these.
"""
import logging
import math

from dataclasses import dataclass
from typing import Callable, NamedTuple

from mpmath import MPContext

from .accumulate import Accumulator
from .errors import DepthExceeded, DomainError

# A private context so the working precision never leaks into (or is changed
# by) other users of mpmath.mp
_mp = MPContext()
_mp.dps = 30

# Largest argument whose gamma value is a finite double
GAMMA_MAX = 171.6

# e^-745 underflows to zero in double precision
_UNDERFLOW_EXPONENT = 745.0


@dataclass(frozen=True)
class QuadratureRequest:
    integrand: Callable[[float], float]
    a: float
    b: float
    tol: float = 1e-10
    max_depth: int = 50
    min_depth: int = 3

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("quadrature limits must be finite")
        if self.a > self.b:
            raise DomainError("quadrature requires a <= b, got {} > {}".format(self.a, self.b))
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise DomainError("quadrature tolerance must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")


class QuadratureResult(NamedTuple):
    value: float
    est_error: float


def _simpson(fa, fm, fb, width):
    return width * (fa + 4.0 * fm + fb) / 6.0


def _evaluate(integrand, x):
    y = float(integrand(x))
    if not math.isfinite(y):
        raise DomainError("integrand is not finite at x={}".format(x))
    return y


def adaptive_integrate(req):
    """
    Adaptive Simpson with a Richardson correction. Each panel is accepted when
    its two-half estimate differs from the whole-panel estimate by at most
    15 times its share of the tolerance; the reported error is the sum of the
    accepted panels' estimates, so it never exceeds req.tol on success.
    """
    f = req.integrand
    a, b = req.a, req.b
    if a == b:
        return QuadratureResult(0.0, 0.0)

    fa, fb = _evaluate(f, a), _evaluate(f, b)
    fm = _evaluate(f, (a + b) / 2)
    whole = _simpson(fa, fm, fb, b - a)

    total = Accumulator()
    est_error = 0.0
    exhausted = 0
    panels = 0

    stack = [(a, b, fa, fm, fb, whole, req.tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = (a + b) / 2
        flm = _evaluate(f, (a + m) / 2)
        frm = _evaluate(f, (m + b) / 2)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        delta = left + right - whole

        accept = depth >= req.min_depth and abs(delta) <= 15.0 * tol
        if accept or depth >= req.max_depth:
            if not accept:
                exhausted += 1
            total.add(left + right + delta / 15.0)
            est_error += abs(delta) / 15.0
            panels += 1
            continue

        # Right half is pushed first so panels are consumed left to right
        stack.append((m, b, fm, frm, fb, right, tol / 2, depth + 1))
        stack.append((a, m, fa, flm, fm, left, tol / 2, depth + 1))

    logging.debug("adaptive simpson used %s panels, est error %s", panels, est_error)

    if exhausted:
        raise DepthExceeded(
            "{} panels hit max depth {}".format(exhausted, req.max_depth),
            total.value,
            est_error,
        )

    return QuadratureResult(total.value, est_error)


def integrate(integrand, a, b, tol=1e-10, max_depth=50):
    return adaptive_integrate(QuadratureRequest(integrand, a, b, tol, max_depth))


def integrate_halfline(f, decay_order, tol=1e-10, max_depth=50):
    """
    Integrate f over [0, inf) for an f decaying at least like e^(-x^n/n).

    The half line is mapped onto [0, 1) with u = x/(1+x). Beyond the point
    where e^(-x^n/n) underflows the integrand is treated as zero, so the
    mapped interval ends short of u = 1 and the endpoint is never evaluated.
    """
    if decay_order < 1:
        raise DomainError("decay order must be a positive integer")

    x_cut = (decay_order * _UNDERFLOW_EXPONENT) ** (1.0 / decay_order)
    u_cut = x_cut / (1.0 + x_cut)

    def mapped(u):
        if u >= 1.0:
            return 0.0
        x = u / (1.0 - u)
        try:
            return f(x) / (1.0 - u) ** 2
        except OverflowError:
            return 0.0

    return adaptive_integrate(QuadratureRequest(mapped, 0.0, u_cut, tol, max_depth))


def _check_gamma_argument(x):
    if not x > 0:
        raise DomainError("gamma is only defined here for x > 0, got {}".format(x))
    if x > GAMMA_MAX:
        raise DomainError("gamma({}) exceeds the representable range".format(x))


def gamma(x):
    _check_gamma_argument(x)
    return float(_mp.gamma(_mp.mpf(x)))


def log_gamma(x):
    if not x > 0:
        raise DomainError("log_gamma is only defined here for x > 0, got {}".format(x))
    return float(_mp.loggamma(_mp.mpf(x)))


def gamma_ratio(a, b):
    """Gamma(a) / Gamma(b) evaluated at working precision before rounding."""
    _check_gamma_argument(a)
    _check_gamma_argument(b)
    return float(_mp.gamma(_mp.mpf(a)) / _mp.gamma(_mp.mpf(b)))


def beta(a, b):
    if not (a > 0 and b > 0):
        raise DomainError("beta requires positive arguments")
    return float(_mp.beta(_mp.mpf(a), _mp.mpf(b)))
