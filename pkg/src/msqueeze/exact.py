"""Exact complex rationals for operator-algebra coefficients.

Arithmetic between two :class:`GaussianRational` values (or ints/Fractions)
stays exact; anything touching a float or complex degrades to ``complex``.
"""

from __future__ import annotations

import numbers
from fractions import Fraction


def _numeric(x) -> bool:
    return isinstance(x, numbers.Complex)


class GaussianRational:
    """Complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- coercion -----------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other)
        return None

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("complex value has no float representation")
        return float(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self):
        return abs(complex(self))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + complex(other) if _numeric(other) else NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) - complex(other) if _numeric(other) else NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other if _numeric(other) else NotImplemented

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * complex(other) if _numeric(other) else NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / complex(other) if _numeric(other) else NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(other) / complex(self) if _numeric(other) else NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return complex(self) ** n
        out = GaussianRational(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is not None:
            return self.re == o.re and self.im == o.im
        if isinstance(other, numbers.Complex):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = GaussianRational(0, 1)


def coerce(value):
    """Return an exact coefficient when possible, else a Python complex."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        return GaussianRational(int(value))
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return complex(value)


def is_exact(value) -> bool:
    return isinstance(value, GaussianRational)


def conj(value):
    return value.conjugate()


def to_complex(value) -> complex:
    return complex(value)
