import math

import pytest

from powexp.errors import DomainError
from powexp.figures import figure_rows


def test_curves():
    table = figure_rows(1)
    assert table.columns == ("x", "y_n2", "y_n4", "y_n6")
    assert len(table.rows) == 401
    assert table.rows[0][0] == -2.0 and table.rows[-1][0] == 2.0

    # Higher orders are flatter inside (-1, 1) and steeper outside
    for x, y2, y4, y6 in table.rows:
        if abs(x) < 1:
            assert y6 >= y4 >= y2
        elif abs(x) > 1:
            assert y6 <= y4 <= y2
        else:
            assert y2 == y4 == y6 == math.exp(-1.0)


def test_limit():
    table = figure_rows(2, 100)
    assert table.columns == ("x", "y_finite", "y_limit")

    corners = [row for row in table.rows if abs(row[0]) == 1.0]
    assert len(corners) == 2
    for _, finite, limit in corners:
        assert finite == limit == math.exp(-1.0)

    middle = [row for row in table.rows if row[0] == 0.5][0]
    assert middle[1] == pytest.approx(1.0, abs=1e-29)
    assert middle[2] == 1.0

    with pytest.raises(DomainError):
        figure_rows(2, 7)


def test_inflexions():
    table = figure_rows(3)
    assert table.columns == ("n", "z_abs", "ordinate")
    assert [row[0] for row in table.rows] == list(range(2, 41, 2))
    assert table.rows[0][1:] == (1.0, math.exp(-0.5))

    with pytest.raises(DomainError):
        figure_rows(4)
