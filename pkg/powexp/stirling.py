"""
Double factorials, Wallis partial products and Stirling's approximation for
(2n)!, all compared on a log scale since (2n)! leaves float range at n = 86.
"""
import math

from typing import NamedTuple

import numpy as np

from .errors import DomainError, ExactOverflow

# Largest k for which k!! is formed as an exact integer
DOUBLE_FACTORIAL_CAP = 100_000

# Largest 2n for which log (2n)! is taken from the exact integer
EXACT_LOG_CAP = 2000


class FactorialReport(NamedTuple):
    n: int
    log_exact: float
    approx49: float
    approx50: float
    rel_err49: float
    rel_err50: float
    ratio_49_over_50: float


class FactorialIdentities(NamedTuple):
    # (2n)!! == 2^n n!
    even_form: bool
    # (2n-1)!! (2n)!! == (2n)!
    product_form: bool


def _check_positive(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer, got {}".format(n))


def double_factorial(k):
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise DomainError("k must be a non-negative integer, got {}".format(k))
    if k > DOUBLE_FACTORIAL_CAP:
        raise ExactOverflow("{}!! is past the exact cap {}".format(k, DOUBLE_FACTORIAL_CAP))
    return math.prod(range(k, 0, -2))


def factorial_identities(n):
    _check_positive(n)
    even = double_factorial(2 * n)
    odd = double_factorial(2 * n - 1)
    return FactorialIdentities(
        even == 2 ** n * math.factorial(n),
        odd * even == math.factorial(2 * n),
    )


def wallis_partial(n):
    """
    Return (raw, corrected): raw = [(2n)!! / (2n-1)!!]^2 and
    corrected = raw / (2n + 1), which tends to pi/2.
    """
    _check_positive(n)
    k = np.arange(1, n + 1, dtype=float)
    log_raw = 2.0 * float(np.sum(np.log1p(1.0 / (2.0 * k - 1.0))))
    return math.exp(log_raw), math.exp(log_raw - math.log(2 * n + 1))


def log_stirling(n):
    """log of sqrt(2 pi n) (n/e)^n"""
    _check_positive(n)
    return 0.5 * math.log(2.0 * math.pi * n) + n * (math.log(n) - 1.0)


def log_factorial(m):
    if m <= EXACT_LOG_CAP:
        return math.log(math.factorial(m))
    return float(np.sum(np.log(np.arange(1, m + 1, dtype=float))))


def stirling_report(n):
    _check_positive(n)
    m = 2 * n
    log_exact = log_factorial(m)

    # Both forms share sqrt(2 pi) (2n/e)^(2n); they differ in the prefactor
    # 2n against sqrt(2n)
    tail = 0.5 * math.log(2.0 * math.pi) + m * (math.log(m) - 1.0)
    approx49 = math.log(m) + tail
    approx50 = 0.5 * math.log(m) + tail

    return FactorialReport(
        n,
        log_exact,
        approx49,
        approx50,
        math.expm1(approx49 - log_exact),
        math.expm1(approx50 - log_exact),
        math.exp(approx49 - approx50),
    )
