"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

import numbers
from fractions import Fraction

from gmpy2 import mpq

_MPQ = type(mpq(0))
_ZERO = mpq(0)
_ONE = mpq(1)


def to_mpq(x) -> "mpq":
    """Convert an exact rational-like value to mpq; floats are converted exactly."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, float):
        return mpq(x)  # exact binary value of the float
    if isinstance(x, str) or type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """An element of Q(i). Immutable; arithmetic is exact."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", to_mpq(re))
        object.__setattr__(self, "im", to_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re, im) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        return cls._make(to_mpq(x), _ZERO)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, _MPQ)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (float, complex)):
                return complex(self) + other
            other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (float, complex)):
                return complex(self) - other
            other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (float, complex)):
                return complex(self) * other
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _ZERO)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def abs2(self):
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (float, complex)):
                return complex(self) / other
            other = GaussianRational.coerce(other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational._make(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, numbers.Integral):
            return complex(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- conversions ------------------------------------------------------
    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def as_fractions(self) -> tuple[Fraction, Fraction]:
        return (Fraction(int(self.re.numerator), int(self.re.denominator)),
                Fraction(int(self.im.numerator), int(self.im.denominator)))

    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self) -> str:
        return format_gaussian(self)

    def __reduce__(self):
        re, im = self.as_fractions()
        return (GaussianRational, (re, im))


def format_rational(q) -> str:
    return f"{int(q.numerator)}/{int(q.denominator)}"


def format_gaussian(c: GaussianRational) -> str:
    """Coefficient literal: ``a/b`` when real, ``(a/b+c/di)`` otherwise."""
    if not c.im:
        return format_rational(c.re)
    sign = "-" if c.im < 0 else "+"
    return f"({format_rational(c.re)}{sign}{format_rational(abs(c.im))}i)"


ZERO = GaussianRational._make(_ZERO, _ZERO)
ONE = GaussianRational._make(_ONE, _ZERO)
I = GaussianRational._make(_ZERO, _ONE)

__all__ = ["GaussianRational", "ZERO", "ONE", "I", "to_mpq", "format_gaussian",
           "format_rational"]
