"""
Series solutions of the two equations selected as 13 and 14,

    x y'' - (n-1) y' - n^2 x^(2n-1) y - n x^n = 0
    x y'' - (n-1) y' - n^2 x^(2n-1) y + (n-1) = 0

checked by residuals of their normalized forms

    y'' - ((n-1)/x) y' - n^2 x^(2n-2) y = n x^(n-1)      (13)
    y'' - ((n-1)/x) y' - n^2 x^(2n-2) y = -(n-1)/x       (14)

Differentiating the series term by term gives g' = n x^(n-1) f + 1 and
f' = n x^(n-1) g, so f (odd r) solves 13 and g (even r) solves 14, the
reverse of the pairing usually quoted. pairing_audit measures it.
"""
import enum
import itertools
import logging
import math

from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple

import numpy as np

from .errors import DomainError, GridContainsZero, SeriesOverflow
from .series import WORKING_RANGE, Sign, TruncationPolicy, check_order, summate_many
from .threads import map_ordered


class Equation(enum.Enum):
    EQ13 = "13"
    EQ14 = "14"


class Particular(enum.Enum):
    F = "f"
    G = "g"
    ZERO = "zero"


# The pairing as usually quoted
STATED_PAIRING = {Particular.G: Equation.EQ13, Particular.F: Equation.EQ14}


@dataclass(frozen=True)
class OdeProblem:
    n: int
    which: Equation

    def __post_init__(self):
        check_order(self.n)


@dataclass(frozen=True)
class SolutionSpec:
    k1: float = 0.0
    k2: float = 0.0
    particular: Particular = Particular.F
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)


@dataclass(frozen=True)
class ResidualReport:
    grid: Tuple[float, ...]
    residuals: Tuple[float, ...]
    max_abs_residual: float
    converged: bool = True


class ParticularValue(NamedTuple):
    y: float
    dy: float
    d2y: float
    terms_used: int
    converged: bool


class CoupledDefects(NamedTuple):
    # g' - n x^(n-1) f - 1 and f' - n x^(n-1) g, the relations the series obey
    defect_a: float
    defect_b: float
    # The same relations with f and g exchanged, as usually quoted
    stated_a: float
    stated_b: float
    converged: bool


class Defect(NamedTuple):
    defect: float
    converged: bool


class PairingAudit(NamedTuple):
    n: int
    residuals: Dict[Tuple[Particular, Equation], float]
    pairing: Dict[Particular, Optional[Equation]]
    matches_stated: bool


def default_grid(a=0.1, b=1.2, points=40):
    return tuple(float(x) for x in np.linspace(a, b, points))


def _particular_rows(which, x, n):
    parity = 0 if which is Particular.G else 1
    coeff = 1.0
    for r in itertools.count(0):
        if r > 0:
            coeff = coeff * n / (1 + r * n)
        if r % 2 != parity:
            continue

        nr = n * r
        y = coeff * x ** (1 + nr)
        dy = coeff * (1 + nr) * x ** nr
        d2y = coeff * (1 + nr) * nr * x ** (nr - 1) if nr > 0 else 0.0
        yield y, dy, d2y


def particular_eval(which, x, n, p=TruncationPolicy()):
    """g or f with its first two derivatives, all differentiated term by term"""
    check_order(n)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if which is Particular.ZERO:
        return ParticularValue(0.0, 0.0, 0.0, 0, True)

    y, dy, d2y = summate_many(_particular_rows(which, x, n), p, width=3)
    return ParticularValue(y.value, dy.value, d2y.value, y.terms_used, y.converged)


def _exponential(k, exponent):
    if k == 0:
        return 0.0
    if exponent > WORKING_RANGE:
        raise SeriesOverflow(
            "e^({:.6g}) is outside the working range e^{}".format(exponent, WORKING_RANGE)
        )
    return k * math.exp(exponent)


def _residual_at(prob, spec, x):
    n = prob.n
    part = particular_eval(spec.particular, x, n, spec.truncation)
    y, dy, d2y = part.y, part.dy, part.d2y

    xn = x ** n
    slope = n * x ** (n - 1)
    curvature = n * (n - 1) * x ** (n - 2) if n > 1 else 0.0
    square = slope * slope

    # Complementary function k1 e^(x^n) + k2 e^(-x^n)
    up = _exponential(spec.k1, xn)
    down = _exponential(spec.k2, -xn)
    y += up + down
    dy += slope * (up - down)
    d2y += (curvature + square) * up + (square - curvature) * down

    lhs = d2y - (n - 1) / x * dy - n * n * x ** (2 * n - 2) * y
    if prob.which is Equation.EQ13:
        rhs = n * x ** (n - 1)
    else:
        rhs = -(n - 1) / x
    return lhs - rhs, part.converged


def residual(prob, spec, grid, parallel=False):
    grid = tuple(float(x) for x in grid)
    if any(x == 0 for x in grid):
        raise GridContainsZero("the normalized equations divide by x; drop x = 0")

    results = map_ordered(lambda x: _residual_at(prob, spec, x), grid, parallel)
    residuals = tuple(r for r, _ in results)
    return ResidualReport(
        grid,
        residuals,
        max((abs(r) for r in residuals), default=0.0),
        all(converged for _, converged in results),
    )


def coupled_relations_check(x, n, p=TruncationPolicy()):
    g = particular_eval(Particular.G, x, n, p)
    f = particular_eval(Particular.F, x, n, p)
    w = n * x ** (n - 1)
    return CoupledDefects(
        abs(g.dy - w * f.y - 1),
        abs(f.dy - w * g.y),
        abs(f.dy - w * g.y - 1),
        abs(g.dy - w * f.y),
        g.converged and f.converged,
    )


def decomposition_check(x, n, sign, p=TruncationPolicy()):
    """
    Defect of the derivative identity behind each antiderivative:
    (g'-f') + (g-f) n x^(n-1) = 1 for e^(x^n), (f'+g') - (f+g) n x^(n-1) = 1
    for e^(-x^n).
    """
    g = particular_eval(Particular.G, x, n, p)
    f = particular_eval(Particular.F, x, n, p)
    w = n * x ** (n - 1)
    if sign is Sign.POS:
        defect = (g.dy - f.dy) + (g.y - f.y) * w - 1
    else:
        defect = (f.dy + g.dy) - (f.y + g.y) * w - 1
    return Defect(abs(defect), g.converged and f.converged)


def pairing_audit(n, grid, p=TruncationPolicy(), tol=1e-8):
    """Find which series solves which equation by trying all four pairings."""
    check_order(n)
    grid = tuple(grid)
    if any(not 0 < x <= 1.5 for x in grid):
        raise DomainError("audit grid points must lie in (0, 1.5]")

    pairs = [(s, e) for s in (Particular.F, Particular.G) for e in Equation]

    def run(pair):
        series, equation = pair
        spec = SolutionSpec(particular=series, truncation=p)
        report = residual(OdeProblem(n, equation), spec, grid)
        return report.max_abs_residual

    residuals = dict(zip(pairs, map_ordered(run, pairs)))

    pairing = {}
    for series in (Particular.F, Particular.G):
        best = min(Equation, key=lambda e: residuals[(series, e)])
        pairing[series] = best if residuals[(series, best)] <= tol else None

    audit = PairingAudit(n, residuals, pairing, pairing == STATED_PAIRING)
    logging.debug("pairing audit n=%s: %s", n, pairing)
    return audit
