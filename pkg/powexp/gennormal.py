"""
The order-(n/2) normal distribution

    y(x) = 1 / (n^(1/n) sigma P_n) * exp(-((x - m) / sigma)^n / n),  n even,

with P_n = 2 Gamma(1 + 1/n) the whole line integral of e^(-x^n). sigma is a
scale parameter: the standard deviation is sqrt(m_2), which equals sigma only
for n = 2.
"""
import math

from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from . import oracle
from .errors import DimensionMismatch, DomainError, EmptyData, MissingMoment, ZeroDenominator
from .series import SeriesEval, SeriesQuery, Sign, TruncationPolicy, antiderivative

# Past |u|^n = CDF_SNAP the CDF is reported as exactly 0 or 1
CDF_SNAP = 45.0


def check_even_order(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise DomainError("n must be an even integer >= 2, got {}".format(n))


@dataclass(frozen=True)
class GenNormal:
    m: float = 0.0
    sigma: float = 1.0
    n: int = 2

    def __post_init__(self):
        check_even_order(self.n)
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError("sigma must be positive, got {}".format(self.sigma))
        if not math.isfinite(self.m):
            raise DomainError("m must be finite")

    def standardize(self, x):
        return (x - self.m) / self.sigma

    @property
    def peak(self):
        """The density at the mode"""
        return normalization(self.n).a_coeff / self.sigma


class Normalization(NamedTuple):
    p_n: float
    # A * sigma, the normalization constant per unit scale
    a_coeff: float


class MomentValue(NamedTuple):
    order: int
    value: float


class RecurrenceMoment(NamedTuple):
    value: MomentValue
    fundamental_order: int
    steps: int


class InflexionPoints(NamedTuple):
    z_abs: float
    ordinate: float


class ClassicalKurtosis(NamedTuple):
    kurtosis: float
    excess: float
    beta_kurtosis: float


class ShapeStats(NamedTuple):
    skew_coeff: float
    skew_sign: int
    kurtosis: float
    kurtosis_excess: float
    n_ref: int


@dataclass(frozen=True)
class MultivariateGenNormal:
    components: Tuple[GenNormal, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) < 1:
            raise DomainError("a multivariate distribution needs at least one component")
        for component in self.components:
            if not isinstance(component, GenNormal):
                raise DomainError("components must be GenNormal, got {!r}".format(component))

    def density(self, x):
        """Joint density at unstandardized coordinates x"""
        if len(x) != len(self.components):
            raise DimensionMismatch(
                "expected {} coordinates, got {}".format(len(self.components), len(x))
            )
        return math.prod(pdf(d, xi) for d, xi in zip(self.components, x))


def normalization(n):
    check_even_order(n)
    p_n = 2.0 * oracle.gamma(1.0 + 1.0 / n)
    return Normalization(p_n, 1.0 / (n ** (1.0 / n) * p_n))


def _kernel(z, n):
    """exp(-z^n / n), zero once the power overflows"""
    try:
        return math.exp(-(abs(z) ** n) / n)
    except OverflowError:
        return 0.0


def pdf(d, x):
    return normalization(d.n).a_coeff / d.sigma * _kernel(d.standardize(x), d.n)


def standard_pdf(z, n):
    return normalization(n).a_coeff * _kernel(z, n)


def pdf_derivatives(d, z):
    """First and second derivatives of the standardized density at z"""
    n = d.n
    y = standard_pdf(z, n)
    dy = -(z ** (n - 1)) * y
    d2y = z ** (n - 2) * (z ** n - (n - 1)) * y
    return dy, d2y


def inflexion_points(n):
    check_even_order(n)
    return InflexionPoints((n - 1) ** (1.0 / n), math.exp(-(n - 1) / n))


def cdf(d, x, p=TruncationPolicy()):
    """
    CDF through the series antiderivative of e^(-u^n) at u = z / n^(1/n).
    Returns a SeriesEval so the truncation diagnostics travel with the value.
    """
    n = d.n
    u = d.standardize(x) / n ** (1.0 / n)
    if u == 0:
        return SeriesEval(0.5, 1, 0.0, True, 1.0)

    try:
        tail = abs(u) ** n > CDF_SNAP
    except OverflowError:
        tail = True
    if tail:
        return SeriesEval(1.0 if u > 0 else 0.0, 0, 0.0, True, 1.0)

    half = antiderivative(SeriesQuery(u, n, Sign.NEG), p)
    value = 0.5 + half.value / normalization(n).p_n
    return SeriesEval(
        min(1.0, max(0.0, value)),
        half.terms_used,
        half.last_term_magnitude,
        half.converged,
        half.cancellation_index,
    )


def _check_even_moment(order):
    if order < 0 or order % 2:
        raise DomainError("central moment order must be even and >= 0, got {}".format(order))


def central_moment_gamma(d, order):
    _check_even_moment(order)
    if order == 0:
        return MomentValue(0, 1.0)

    n = d.n
    scale = n ** (order / n) * d.sigma ** order
    return MomentValue(order, scale * oracle.gamma_ratio((1.0 + order) / n, 1.0 / n))


def central_moment_recurrence(d, order):
    """
    Reduce m_2p = sigma^n (2p + 1 - n) m_(2p-n) until the order drops below n.
    The surviving fundamental moment is m_0 = 1 or a gamma evaluated m_2..m_(n-2).
    """
    _check_even_moment(order)
    n = d.n
    steps = order // n
    fundamental = order % n

    factor = 1
    for k in range(1, steps + 1):
        factor *= order + 1 - k * n

    base = 1.0 if fundamental == 0 else central_moment_gamma(d, fundamental).value
    value = (d.sigma ** n) ** steps * factor * base
    return RecurrenceMoment(MomentValue(order, value), fundamental, steps)


def moment_kn(d, k):
    if k < 1:
        raise DomainError("k must be at least 1, got {}".format(k))
    n = d.n
    product = math.prod(1 + r * n for r in range(k))
    return MomentValue(k * n, (d.sigma ** n) ** k * product)


def odd_moment(d, order):
    if order < 1 or order % 2 == 0:
        raise DomainError("odd_moment needs an odd order, got {}".format(order))
    return MomentValue(order, 0.0)


def central_moment(d, order, method="gamma"):
    if order % 2:
        return odd_moment(d, order)
    if method == "gamma":
        return central_moment_gamma(d, order)
    if method == "recurrence":
        return central_moment_recurrence(d, order).value
    if method == "kn":
        if order == 0 or order % d.n:
            raise DomainError(
                "the kn form needs a positive multiple of n={}, got {}".format(d.n, order)
            )
        return moment_kn(d, order // d.n)
    raise DomainError("unknown moment method {}".format(method))


def fundamental_moments(d):
    """m_0, m_2, ..., m_(n-2): the moments the reduction can't decompose"""
    return [central_moment_gamma(d, order) for order in range(0, d.n, 2)]


def standard_deviation(d):
    return math.sqrt(central_moment_gamma(d, 2).value)


def classical_kurtosis(n):
    """m_4 / m_2^2 by the gamma form and by the beta form"""
    check_even_order(n)
    g = oracle.gamma
    kurtosis = g(5.0 / n) * g(1.0 / n) / g(3.0 / n) ** 2
    beta_kurtosis = oracle.beta(1.0 / n, 5.0 / n) / oracle.beta(3.0 / n, 3.0 / n)
    return ClassicalKurtosis(kurtosis, kurtosis - 3.0, beta_kurtosis)


def generalized_shape(moments, n_ref):
    """
    Skewness and kurtosis measured against the order-(n/2) normal:

        kurtosis = m_2n / m_n^2, excess = kurtosis - (1 + n)
        skew = (m_(n+1)^n / m_n^(n+1))^(1/n)

    The root is taken on magnitudes and the sign of m_(n+1) reported apart.
    """
    check_even_order(n_ref)
    by_order = {moment.order: moment.value for moment in moments}

    needed = (n_ref, n_ref + 1, 2 * n_ref)
    for order in needed:
        if order not in by_order:
            raise MissingMoment("moment of order {} is required".format(order))

    m_n, m_n1, m_2n = (by_order[order] for order in needed)
    if m_n == 0:
        raise ZeroDenominator("m_{} is zero".format(n_ref))

    kurtosis = m_2n / m_n ** 2
    skew = abs(m_n1) / abs(m_n) ** ((n_ref + 1) / n_ref)
    skew_sign = (m_n1 > 0) - (m_n1 < 0)
    return ShapeStats(skew, skew_sign, kurtosis, kurtosis - (1 + n_ref), n_ref)


def empirical_central_moments(data, max_order):
    """Central moments (1/N) sum (x_i - mean)^k for k = 1..max_order"""
    if max_order < 2:
        raise DomainError("max_order must be at least 2")
    x = np.asarray(data, dtype=float)
    if x.size == 0:
        raise EmptyData("no data to take moments of")

    deviations = x - x.mean()
    return [
        MomentValue(k, float(np.mean(deviations ** k))) for k in range(1, max_order + 1)
    ]


def multivariate_pdf(mv, z):
    """Joint standardized density of independent components"""
    if len(z) != len(mv.components):
        raise DimensionMismatch(
            "expected {} coordinates, got {}".format(len(mv.components), len(z))
        )

    peak = math.prod(normalization(d.n).a_coeff for d in mv.components)
    exponent = 0.0
    for d, zi in zip(mv.components, z):
        try:
            exponent += abs(zi) ** d.n / d.n
        except OverflowError:
            return 0.0
    return peak * math.exp(-exponent)


def rect_limit(x, n):
    """
    e^(-x^n) for a finite even n; for n = math.inf the rectangular limit,
    1 inside (-1, 1), 1/e at +-1 and 0 outside.
    """
    if n == math.inf:
        if abs(x) < 1:
            return 1.0
        if abs(x) == 1:
            return math.exp(-1.0)
        return 0.0

    check_even_order(n)
    try:
        return math.exp(-(abs(x) ** n))
    except OverflowError:
        return 0.0
