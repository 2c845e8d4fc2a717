"""
Series antiderivatives of e^(x^n) and e^(-x^n).

The bracket series multiplying e^(+-x^n) in the closed forms is

    B(x) = sum_r s^r n^r x^(1+nr) / prod_{p=0}^{r} (1 + pn)

with s = -1 for e^(x^n) and s = +1 for e^(-x^n). Its even-r and odd-r halves
are g and f. Every antiderivative here has its constant fixed by F(0) = 0.
"""
import enum
import itertools
import logging
import math
import sys

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import oracle
from .accumulate import Accumulator
from .errors import DivergentIntegral, DomainError, ExactOverflow, SeriesOverflow

# e^(x^n) is only formed while the exponent stays below this bound
WORKING_RANGE = 45.0

# Scaled bracket terms below e^this are skipped
_UNDERFLOW_EXPONENT = -700.0

EPSILON = sys.float_info.epsilon

# Exact rational identities are refused past this order
EXACT_CAP = 400


class Sign(enum.Enum):
    POS = "pos"
    NEG = "neg"

    @property
    def unit(self):
        return 1 if self is Sign.POS else -1


@dataclass(frozen=True)
class SeriesQuery:
    x: float
    n: int
    sign: Sign

    def __post_init__(self):
        check_order(self.n)
        if not math.isfinite(self.x):
            raise DomainError("x must be finite, got {}".format(self.x))

    @property
    def exponent(self):
        """The exponent of the e^(+-x^n) factor"""
        try:
            return self.sign.unit * self.x ** self.n
        except OverflowError:
            return self.sign.unit * math.copysign(math.inf, self.x) ** self.n


@dataclass(frozen=True)
class TruncationPolicy:
    max_terms: int = 200
    rel_tol: float = 1e-14
    abs_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        for name in ("rel_tol", "abs_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError("{} must be finite and positive".format(name))

    def threshold(self, partial):
        return max(self.abs_tol, self.rel_tol * abs(partial))


@dataclass(frozen=True)
class SeriesEval:
    value: float
    terms_used: int
    last_term_magnitude: float
    converged: bool
    cancellation_index: float = 1.0


def exact_eval(value):
    """A SeriesEval for a value that needed no series at all."""
    return SeriesEval(float(value), 0, 0.0, True, 1.0)


def check_order(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer, got {}".format(n))


def _cancellation(abs_sum, value):
    if value == 0:
        return 1.0 if abs_sum == 0 else math.inf
    return max(1.0, abs_sum / abs(value))


def _guard_overflow(rows):
    try:
        yield from rows
    except SeriesOverflow:
        raise
    except OverflowError as ex:
        raise SeriesOverflow("series term overflowed: {}".format(ex)) from ex


def summate_many(rows, policy, width=1):
    """
    Sum several term streams in lockstep. Rows are tuples with one term per
    stream. Summation stops at the first row r >= 1 where, for every stream,
    the term is below the policy threshold of its running sum and smaller in
    magnitude than the previous term of that stream. Zero terms always pass.
    """
    accs = [Accumulator() for _ in range(width)]
    previous = [None] * width
    last = [0.0] * width
    used = 0
    converged = False

    rows = _guard_overflow(rows)
    for row in rows:
        if used >= policy.max_terms:
            break
        used += 1

        passed = True
        for i, term in enumerate(row):
            if not math.isfinite(term):
                raise SeriesOverflow("series term {} is not finite".format(used - 1))
            accs[i].add(term)
            last[i] = abs(term)

            small = abs(term) < policy.threshold(accs[i].value)
            decreasing = previous[i] is not None and abs(term) < previous[i]
            if term != 0 and not (small and decreasing):
                passed = False
            previous[i] = abs(term)

        if passed and used > 1:
            converged = True
            break

    if not converged:
        logging.debug("series not converged after %s terms", used)

    return [
        SeriesEval(
            acc.value, used, last[i], converged, _cancellation(acc.abs_sum, acc.value)
        )
        for i, acc in enumerate(accs)
    ]


def summate(terms, policy):
    (result,) = summate_many(((t,) for t in terms), policy)
    return result


def bracket_terms(x, n, sign):
    """Terms of the bracket series, r = 0, 1, 2, ..."""
    ratio = -sign.unit * n * x ** n
    term = x
    for r in itertools.count(1):
        yield term
        term = term * ratio / (1 + r * n)


def maclaurin_terms(x, n, sign):
    """Terms (+-1)^m x^(nm+1) / (m! (nm+1)), m = 0, 1, 2, ..."""
    ratio = sign.unit * x ** n
    power = x
    for m in itertools.count(0):
        yield power / (n * m + 1)
        power = power * ratio / (m + 1)


def bracket_series(q, p=TruncationPolicy()):
    if q.x == 0:
        return SeriesEval(0.0, 1, 0.0, True, 1.0)
    return summate(bracket_terms(q.x, q.n, q.sign), p)


def _check_working_range(q):
    if q.exponent > WORKING_RANGE:
        raise SeriesOverflow(
            "e^({:+.6g}) is outside the working range e^{}".format(q.exponent, WORKING_RANGE)
        )


def scaled_bracket_terms(x, n, exponent, skip=0):
    """
    Terms of the bracket series already multiplied by e^exponent, for a
    non-alternating bracket (exponent < 0). The first term is formed in log
    space so neither factor overflows; later terms follow by recurrence.
    """
    log_x = math.log(abs(x))
    r = skip
    log_term = (
        log_x
        + r * n * log_x
        - math.log(n)
        - math.lgamma(r + 1 + 1.0 / n)
        + math.lgamma(1.0 / n)
        + exponent
    )
    ratio = -n * exponent
    term = math.copysign(math.exp(log_term), x)
    while True:
        yield term
        r += 1
        term = term * ratio / (1 + r * n)


def _leading_underflow(x, n, exponent, p):
    """Count the leading scaled terms that are below e^_UNDERFLOW_EXPONENT."""
    log_x = math.log(abs(x))
    base = math.lgamma(1.0 / n) - math.log(n) + log_x + exponent
    for r in range(p.max_terms):
        if base + r * n * log_x - math.lgamma(r + 1 + 1.0 / n) > _UNDERFLOW_EXPONENT:
            return r
    return p.max_terms


def _scaled_antiderivative(q, p):
    exponent = q.exponent
    skip = _leading_underflow(q.x, q.n, exponent, p) if math.isfinite(exponent) else p.max_terms
    if skip >= p.max_terms:
        logging.debug("every scaled term up to %s underflows", p.max_terms)
        return SeriesEval(0.0, p.max_terms, 0.0, False, 1.0)

    rest = TruncationPolicy(p.max_terms - skip, p.rel_tol, p.abs_tol)
    result = summate(scaled_bracket_terms(q.x, q.n, exponent, skip), rest)
    return SeriesEval(
        result.value,
        result.terms_used + skip,
        result.last_term_magnitude,
        result.converged,
        result.cancellation_index,
    )


def antiderivative(q, p=TruncationPolicy()):
    """
    e^(+-x^n) times the bracket series, i.e. the antiderivative with F(0) = 0.

    Where the bracket is non-alternating its terms are summed already scaled
    by e^(+-x^n). Where it alternates and its cancellation would cost more
    than rel_tol, the value comes from the Maclaurin series instead, whose
    terms then share one sign. cancellation_index always describes the
    bracket.
    """
    _check_working_range(q)
    if q.x == 0:
        return SeriesEval(0.0, 1, 0.0, True, 1.0)

    exponent = q.exponent
    if exponent < 0:
        return _scaled_antiderivative(q, p)

    bracket = bracket_series(q, p)
    if bracket.cancellation_index * EPSILON > p.rel_tol:
        logging.debug(
            "bracket cancellation index %s at x=%s, using the Maclaurin series",
            bracket.cancellation_index,
            q.x,
        )
        maclaurin = summate(maclaurin_terms(q.x, q.n, q.sign), p)
        return SeriesEval(
            maclaurin.value,
            maclaurin.terms_used,
            maclaurin.last_term_magnitude,
            maclaurin.converged,
            bracket.cancellation_index,
        )

    scale = math.exp(exponent)
    return SeriesEval(
        scale * bracket.value,
        bracket.terms_used,
        bracket.last_term_magnitude * scale,
        bracket.converged,
        bracket.cancellation_index,
    )


def maclaurin_antiderivative(q, p=TruncationPolicy()):
    if q.x == 0:
        return SeriesEval(0.0, 1, 0.0, True, 1.0)
    _check_working_range(q)
    return summate(maclaurin_terms(q.x, q.n, q.sign), p)


def even_odd_split(x, n, p=TruncationPolicy()):
    """
    Return (g, f): the even-r and odd-r halves of the non-alternating bracket.
    g + f is the bracket of e^(-x^n) and g - f the bracket of e^(x^n).
    """
    check_order(n)
    if x == 0:
        zero = SeriesEval(0.0, 1, 0.0, True, 1.0)
        return zero, zero

    g = summate(itertools.islice(bracket_terms(x, n, Sign.NEG), 0, None, 2), p)
    f = summate(itertools.islice(bracket_terms(x, n, Sign.NEG), 1, None, 2), p)
    return g, f


class CoefficientIdentity(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def _check_exact(m, n):
    if m < 0:
        raise DomainError("m must be non-negative")
    check_order(n)
    if m > EXACT_CAP or n > EXACT_CAP:
        raise ExactOverflow("exact identity refused past order {}".format(EXACT_CAP))


def cauchy_coefficient(m, n):
    """
    The bracketed sum multiplying x^(1+mn) when e^(x^n) is multiplied out
    against the non-alternating bracket:

        sum_{r=0}^{m} (-1)^r n^(m-r) / (r! prod_{p=0}^{m-r} (1 + pn))
    """
    _check_exact(m, n)
    total = Fraction(0)
    for r in range(m + 1):
        product = math.prod(1 + p * n for p in range(m - r + 1))
        total += Fraction((-1) ** r * n ** (m - r), math.factorial(r) * product)
    return total


def coefficient_identity(m, n, signed=False):
    """
    Compare the Maclaurin coefficient 1/(m!(nm+1)) with the Cauchy product
    coefficient. With signed=True both sides carry the extra (-1)^m of the
    e^(-x^n) form.
    """
    _check_exact(m, n)
    lhs = Fraction(1, math.factorial(m) * (n * m + 1))
    rhs = (-1) ** m * cauchy_coefficient(m, n)
    if signed:
        lhs, rhs = (-1) ** m * lhs, (-1) ** m * rhs
    return CoefficientIdentity(lhs, rhs, lhs == rhs)


def odd_reflection_check(x, n, p=TruncationPolicy()):
    """|F_-(x) + F_+(-x)|, which vanishes for odd n"""
    check_order(n)
    if n % 2 == 0:
        raise DomainError("the reflection identity needs odd n, got {}".format(n))

    neg = antiderivative(SeriesQuery(x, n, Sign.NEG), p)
    pos = antiderivative(SeriesQuery(-x, n, Sign.POS), p)
    return abs(neg.value + pos.value)


class LowerBound(enum.Enum):
    CLOSED_NEG_INF = "closed"
    # Admits the same endpoints as FINITE_ONLY
    OPEN_NEG_INF = "open"
    FINITE_ONLY = "finite"


class UpperBound(enum.Enum):
    CLOSED_POS_INF = "closed"
    OPEN_POS_INF = "open"
    FINITE_ONLY = "finite"


@dataclass(frozen=True)
class ConvergenceDomain:
    lower: LowerBound
    upper: UpperBound

    def admits(self, endpoint):
        if math.isfinite(endpoint):
            return True
        if endpoint < 0:
            return self.lower is LowerBound.CLOSED_NEG_INF
        return self.upper is UpperBound.CLOSED_POS_INF

    def describe(self):
        left = "-inf <= x" if self.lower is LowerBound.CLOSED_NEG_INF else "-inf < x"
        right = "x <= inf" if self.upper is UpperBound.CLOSED_POS_INF else "x < inf"
        return "{} and {}".format(left, right)


def convergence_domain(n, sign):
    check_order(n)
    even = n % 2 == 0
    if sign is Sign.POS:
        if even:
            return ConvergenceDomain(LowerBound.FINITE_ONLY, UpperBound.FINITE_ONLY)
        return ConvergenceDomain(LowerBound.CLOSED_NEG_INF, UpperBound.FINITE_ONLY)

    if even:
        return ConvergenceDomain(LowerBound.CLOSED_NEG_INF, UpperBound.CLOSED_POS_INF)
    return ConvergenceDomain(LowerBound.FINITE_ONLY, UpperBound.CLOSED_POS_INF)


def _endpoint_value(x, n, sign, p):
    if math.isfinite(x):
        return antiderivative(SeriesQuery(x, n, sign), p)

    # The half line integral of e^(-t^n) is Gamma(1 + 1/n); for e^(t^n) with
    # odd n the same tail appears on the negative side
    return exact_eval(math.copysign(oracle.gamma(1.0 + 1.0 / n), x))


def definite_integral(a, b, n, sign, p=TruncationPolicy()):
    check_order(n)
    if math.isnan(a) or math.isnan(b):
        raise DomainError("integration limits must not be NaN")
    if a > b:
        raise DomainError("definite_integral requires a <= b, got {} > {}".format(a, b))

    domain = convergence_domain(n, sign)
    for endpoint in (a, b):
        if not domain.admits(endpoint):
            raise DivergentIntegral(
                "integral of e^({}x^{}) diverges at {}; convergence domain is {}".format(
                    "" if sign is Sign.POS else "-", n, endpoint, domain.describe()
                )
            )

    if a == b:
        return exact_eval(0.0)

    upper = _endpoint_value(b, n, sign, p)
    lower = _endpoint_value(a, n, sign, p)
    value = upper.value - lower.value
    abs_sum = abs(upper.value) * upper.cancellation_index + abs(
        lower.value
    ) * lower.cancellation_index

    return SeriesEval(
        value,
        max(upper.terms_used, lower.terms_used),
        upper.last_term_magnitude + lower.last_term_magnitude,
        upper.converged and lower.converged,
        _cancellation(abs_sum, value),
    )
