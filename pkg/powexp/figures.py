import math

from typing import NamedTuple, Tuple

import numpy as np

from .errors import DomainError
from .gennormal import check_even_order, inflexion_points, rect_limit


class FigureTable(NamedTuple):
    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]


# x in [-2, 2] at step 0.01, built from integers so +-1 land exactly
def _abscissae():
    return [float(x) for x in np.arange(-200, 201) / 100]


def _curves():
    orders = (2, 4, 6)
    rows = [(x,) + tuple(rect_limit(x, n) for n in orders) for x in _abscissae()]
    return FigureTable(("x",) + tuple("y_n{}".format(n) for n in orders), tuple(rows))


def _limit(n):
    check_even_order(n)
    rows = [(x, rect_limit(x, n), rect_limit(x, math.inf)) for x in _abscissae()]
    return FigureTable(("x", "y_finite", "y_limit"), tuple(rows))


def _inflexions():
    rows = []
    for n in range(2, 41, 2):
        points = inflexion_points(n)
        rows.append((n, points.z_abs, points.ordinate))
    return FigureTable(("n", "z_abs", "ordinate"), tuple(rows))


def figure_rows(which, n=100):
    """
    Data behind the three figures: 1 compares e^(-x^n) for n = 2, 4, 6,
    2 sets e^(-x^n) at large n beside its rectangular limit and 3 lists the
    inflexion points of the density for even n up to 40.
    """
    if which == 1:
        return _curves()
    if which == 2:
        return _limit(n)
    if which == 3:
        return _inflexions()
    raise DomainError("no figure {}, choose 1, 2 or 3".format(which))
