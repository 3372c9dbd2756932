"""Scalar coefficients in two flavours: exact and floating.

Exact coefficients are :class:`fractions.Fraction` when real and
:class:`ExactComplex` (a Gaussian rational) otherwise.  Floating
coefficients are plain Python ``complex``.  Helpers in this module convert
between the two and never mix them silently.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union


class ExactComplex:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExactComplex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return normalize(ExactComplex(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return normalize(ExactComplex(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return normalize(ExactComplex(self.re * o.re - self.im * o.im,
                                      self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return normalize(ExactComplex((self.re * o.re + self.im * o.im) / d,
                                      (self.im * o.re - self.re * o.im) / d))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Fraction(1) / (self ** (-k))
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return normalize(ExactComplex(self.re, -self.im))

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ExactComplex({self.re!s}, {self.im!s})"

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


Exact = Union[Fraction, ExactComplex]
Scalar = Union[int, Fraction, ExactComplex, float, complex]


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, ExactComplex)) and not isinstance(x, bool)


def normalize(x):
    """Canonical exact form: Fraction when the imaginary part vanishes."""
    if isinstance(x, ExactComplex):
        return x.re if x.im == 0 else x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def to_exact(x) -> Exact:
    """Convert to an exact scalar.  Floats are converted by their binary value."""
    if isinstance(x, (Fraction, ExactComplex, int)):
        return normalize(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coefficient {x!r}")
        return Fraction(x)
    if isinstance(x, complex):
        return normalize(ExactComplex(Fraction(x.real), Fraction(x.imag)))
    if isinstance(x, numbers.Complex):
        return to_exact(complex(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def to_complex(x) -> complex:
    c = complex(x)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite coefficient {x!r}")
    return c


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def unify(values):
    """Return ``values`` as a list of one flavour: all exact or all complex."""
    values = list(values)
    if all_exact(values):
        return [normalize(v) for v in values]
    return [to_complex(v) for v in values]


def magnitude(x) -> float:
    return abs(complex(x))


def is_zero(x, scale: float = 0.0, rtol: float = 1e-12) -> bool:
    """Zero test: exact equality for exact scalars, scale-relative otherwise."""
    if is_exact(x):
        return x == 0
    return abs(x) <= rtol * scale


def real_if_close(x):
    """Exact scalars pass through; complex values with zero imag become float."""
    if is_exact(x):
        return normalize(x)
    c = complex(x)
    return c.real if c.imag == 0 else c


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_scalar(x) -> str:
    """Text form used by every printer: ``3``, ``-3/4``, ``(1/2+3i)``, ``2.5``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if is_exact(x):
        x = normalize(x)
        if isinstance(x, Fraction):
            return format_rational(x)
        return _format_complex_parts(format_rational(x.re), format_rational(x.im), x.im < 0)
    c = complex(x)
    if c.imag == 0:
        return repr(float(c.real))
    return _format_complex_parts(repr(float(c.real)), repr(float(c.imag)),
                                 math.copysign(1, c.imag) < 0)


def _format_complex_parts(re: str, im: str, im_neg: bool) -> str:
    return f"({re}{im}i)" if im_neg else f"({re}+{im}i)"
