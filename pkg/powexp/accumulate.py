# Adapted from the Accumulator in pyproj (a translation of GeographicLib::Accumulator),
# Copyright (c) Charles Karney (2011), MIT/X11 License.


def two_sum(u, v):
    # Error free transformation: u + v == s + t exactly
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    t = -(up + vpp)
    return s, t


class Accumulator:
    """
    Running compensated sum. Keeps the rounded sum and the rounding error of
    every addition so long alternating series don't drift.
    """

    def __init__(self, value=0.0):
        self._s = float(value)
        self._t = 0.0
        self.abs_sum = abs(self._s)

    def add(self, y):
        self.abs_sum += abs(y)
        y, u = two_sum(y, self._t)
        self._s, self._t = two_sum(y, self._s)

        if self._s == 0:
            self._s = u
        else:
            self._t += u

    def __float__(self):
        return self._s + self._t

    @property
    def value(self):
        return float(self)
