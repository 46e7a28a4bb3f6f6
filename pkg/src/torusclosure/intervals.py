"""Interval arithmetic with exact rational endpoints.

Used only for embedding algebraic numbers into C and for sign decisions of
provably nonzero quantities; equality decisions never go through intervals.
"""

from __future__ import annotations

from fractions import Fraction


class Interval:
    """Closed interval [lo, hi] with Fraction endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @staticmethod
    def point(v):
        v = Fraction(v)
        return Interval(v, v)

    def __add__(self, other):
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def scale(self, c):
        c = Fraction(c)
        return Interval(self.lo * c, self.hi * c) if c >= 0 else Interval(self.hi * c, self.lo * c)

    def width(self):
        return self.hi - self.lo

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def sign(self):
        """+1 or -1 when the interval excludes zero, else 0 (undecided)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def intersect(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


class Box:
    """Axis-aligned rectangle in C: re and im are Intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re, self.im = re, im

    @staticmethod
    def point(re, im):
        return Box(Interval.point(re), Interval.point(im))

    def __add__(self, other):
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Box(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return Box(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def scale(self, c):
        return Box(self.re.scale(c), self.im.scale(c))

    def width(self):
        return max(self.re.width(), self.im.width())

    def conjugate(self):
        return Box(self.re, -self.im)

    def intersect(self, other):
        re = self.re.intersect(other.re)
        im = self.im.intersect(other.im)
        if re is None or im is None:
            return None
        return Box(re, im)

    def contains_point(self, re, im):
        return (self.re.lo <= re <= self.re.hi) and (self.im.lo <= im <= self.im.hi)

    def contains_box(self, other):
        return (self.re.lo <= other.re.lo and other.re.hi <= self.re.hi
                and self.im.lo <= other.im.lo and other.im.hi <= self.im.hi)

    def disjoint(self, other):
        return self.intersect(other) is None

    def midpoint(self):
        return ((self.re.lo + self.re.hi) / 2, (self.im.lo + self.im.hi) / 2)

    def __repr__(self):
        return f"Box(re={self.re}, im={self.im})"


def eval_poly_box(coeffs, z):
    """Interval Horner evaluation of a rational-coefficient polynomial at a Box.

    ``coeffs`` are ascending (constant term first).
    """
    acc = Box.point(0, 0)
    for c in reversed(list(coeffs)):
        acc = acc * z + Box.point(Fraction(c), 0)
    return acc
