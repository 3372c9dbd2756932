"""Generalized polynomials with rational exponents, and ordinary polynomials.

A :class:`GenPoly` is a finite sum ``c_1 X^{e_1} + ... + c_l X^{e_l}`` with
nonnegative rational exponents.  An :class:`IntPoly` is an ordinary dense
polynomial.  The bridge between them is the substitution ``Y = X^{1/q}``
(:func:`substitute_down` / :func:`substitute_up`).

Both types exist in an exact flavour (Fraction / ExactComplex coefficients)
and a floating flavour (complex coefficients).  A value is exact only if all
of its coefficients are.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (ExponentTooLarge, IncompatibleDenominator, NegativeExponent,
                     ZeroPolynomial)
from .exact import (ExactComplex, all_exact, format_rational, format_scalar, is_exact,
                    magnitude, normalize, to_complex, unify)

MAX_EXPONENT_DENOMINATOR = 10**6
MAX_EXPONENT_NUMERATOR = 10**9
FLOAT_ZERO_RTOL = 1e-12


def as_rational(value) -> Fraction:
    """Coerce an exponent or order to a Fraction (strings like '3/4' allowed)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(MAX_EXPONENT_DENOMINATOR)
    raise TypeError(f"cannot interpret {value!r} as a rational exponent")


def _check_exponent(e: Fraction) -> Fraction:
    if e < 0:
        raise NegativeExponent(f"exponent {e} is negative")
    if e.denominator > MAX_EXPONENT_DENOMINATOR or abs(e.numerator) > MAX_EXPONENT_NUMERATOR:
        raise ExponentTooLarge(f"exponent {e} exceeds the supported size")
    return e


# ---------------------------------------------------------------------------
# IntPoly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPoly:
    """Dense ordinary polynomial, coefficients in degree-descending order."""

    coeffs: tuple

    def __post_init__(self):
        cs = unify(self.coeffs)
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        object.__setattr__(self, "coeffs", tuple(cs[i:]))

    # construction helpers --------------------------------------------------
    @classmethod
    def from_ascending(cls, coeffs: Sequence) -> "IntPoly":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "IntPoly":
        p = cls((leading,))
        for r in roots:
            p = p * cls((1, -r))
        return p

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "IntPoly":
        return cls((coeff,) + (0,) * degree)

    # properties ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def ascending(self) -> tuple:
        return tuple(reversed(self.coeffs))

    @property
    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[0]

    @property
    def exact(self) -> bool:
        return all_exact(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        """Coefficient of ``Y**k``."""
        d = self.degree
        if k < 0 or k > d:
            return Fraction(0) if self.exact else 0j
        return self.coeffs[d - k]

    def to_float(self) -> "IntPoly":
        return IntPoly(tuple(to_complex(c) for c in self.coeffs))

    def to_numpy(self) -> np.ndarray:
        return np.array([to_complex(c) for c in self.coeffs], dtype=complex)

    # arithmetic ------------------------------------------------------------
    def _pair(self, other):
        if not isinstance(other, IntPoly):
            other = IntPoly((other,))
        if self.exact and other.exact:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other):
        a, b = self._pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        zero = Fraction(0) if a.exact else 0j
        ca = (zero,) * (n - len(a.coeffs)) + a.coeffs
        cb = (zero,) * (n - len(b.coeffs)) + b.coeffs
        return IntPoly(tuple(x + y for x, y in zip(ca, cb)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return IntPoly((other,)) - self

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.is_zero() or b.is_zero():
            return IntPoly(())
        if not a.exact:
            return IntPoly(tuple(np.convolve(a.to_numpy(), b.to_numpy())))
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] = out[i + j] + x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = Fraction(0) if (self.exact and is_exact(x)) else 0j
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        d = self.degree
        return IntPoly(tuple(c * (d - i) for i, c in enumerate(self.coeffs[:-1])))

    def scale(self, s) -> "IntPoly":
        return IntPoly(tuple(c * s for c in self.coeffs)) if s != 0 else IntPoly(())

    def monic(self) -> "IntPoly":
        lead = self.leading
        return IntPoly(tuple(c / lead for c in self.coeffs))

    def divmod(self, other: "IntPoly"):
        """Long division; exact for exact operands."""
        a, b = self._pair(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a.coeffs)
        db = b.degree
        if a.degree < db:
            return IntPoly(()), a
        quot = []
        lead = b.coeffs[0]
        for i in range(len(rem) - db):
            c = rem[i] / lead
            quot.append(c)
            if c != 0:
                for j in range(1, db + 1):
                    rem[i + j] = rem[i + j] - c * b.coeffs[j]
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[len(rem) - db:]))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def inflate(self, q: int) -> "IntPoly":
        """``P(Y**q)`` as a polynomial in Y."""
        if self.is_zero():
            return self
        zero = Fraction(0) if self.exact else 0j
        out = []
        for i, c in enumerate(self.coeffs):
            out.append(c)
            if i < self.degree:
                out.extend([zero] * (q - 1))
        return IntPoly(tuple(out))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``Y**k``."""
        if self.is_zero():
            return self
        zero = Fraction(0) if self.exact else 0j
        return IntPoly(self.coeffs + (zero,) * k)

    def lowest_degree(self) -> int:
        """Multiplicity of the root 0 (the lowest nonzero power)."""
        k = 0
        for c in reversed(self.coeffs):
            if c != 0:
                return k
            k += 1
        raise ZeroPolynomial("zero polynomial")

    def to_text(self, var: str = "Y") -> str:
        return format_genpoly(substitute_up(self, 1), var=var)

    def __str__(self):
        return self.to_text("Y")


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Monic gcd of two exact polynomials (Euclid)."""
    if not (a.exact and b.exact):
        raise TypeError("poly_gcd requires exact polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: IntPoly) -> list:
    """Yun's algorithm: return ``[(S_k, k), ...]`` with p = lc * prod S_k**k.

    Factors are monic, pairwise coprime and squarefree; trivial factors are
    omitted.  Exact polynomials only.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree <= 0:
        return IntPoly((1,))
    return (p // poly_gcd(p, p.derivative())).monic()


def root_power_poly(p: IntPoly, q: int) -> IntPoly:
    """Monic polynomial whose roots are ``r**q`` for the roots r of ``p``.

    Uses Newton's identities on power sums, so no root is ever computed; the
    result is exact when ``p`` is.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    m = p.monic()
    d = m.degree
    if d == 0:
        return IntPoly((1,))
    a = [None] + [m.coeffs[i] for i in range(1, d + 1)]  # Y^d + a1 Y^{d-1} + ...
    zero = Fraction(0) if m.exact else 0j
    n_pow = q * d
    psum = [zero] * (n_pow + 1)
    for k in range(1, n_pow + 1):
        s = (a[k] * k) if k <= d else zero
        for i in range(1, min(k - 1, d) + 1):
            s = s + a[i] * psum[k - i]
        psum[k] = -s
    big = [zero] + [psum[q * k] for k in range(1, d + 1)]
    b = [None] * (d + 1)
    for k in range(1, d + 1):
        s = big[k]
        for i in range(1, k):
            s = s + b[i] * big[k - i]
        b[k] = -s / k
    return IntPoly((1,) + tuple(b[1:]))


# ---------------------------------------------------------------------------
# GenPoly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenPoly:
    """Normalized generalized polynomial: exponents strictly decreasing.

    Build instances through :func:`make_genpoly`, which merges and cleans the
    terms; the constructor only stores what it is given.
    """

    terms: tuple = ()

    @property
    def exact(self) -> bool:
        return all_exact(c for c, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Fraction:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return self.terms[0][1]

    @property
    def leading(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.terms[0][0]

    @property
    def exponents(self) -> tuple:
        return tuple(e for _, e in self.terms)

    @property
    def coefficients(self) -> tuple:
        return tuple(c for c, _ in self.terms)

    def to_float(self) -> "GenPoly":
        return GenPoly(tuple((to_complex(c), e) for c, e in self.terms))

    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, negate(_lift(other)))

    def __rsub__(self, other):
        return add(_lift(other), negate(self))

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = make_genpoly([(1, 0)])
        for _ in range(k):
            result = mul(result, self)
        return result

    def __call__(self, x: float):
        """Evaluate at a positive real ``x`` (principal branch)."""
        return sum(complex(c) * x ** float(e) for c, e in self.terms)

    def __str__(self):
        return format_genpoly(self)

    @classmethod
    def parse(cls, text: str) -> "GenPoly":
        return parse_genpoly(text)


def _lift(x) -> GenPoly:
    if isinstance(x, GenPoly):
        return x
    return make_genpoly([(x, 0)])


def X(exponent=1) -> GenPoly:
    """Monomial ``X^exponent`` (handy for building polynomials in code)."""
    return make_genpoly([(1, exponent)])


def make_genpoly(terms: Iterable, zero_scale: float | None = None) -> GenPoly:
    """Normalize ``[(coeff, exponent), ...]`` into a :class:`GenPoly`.

    Equal exponents are merged, zero coefficients dropped and the result is
    sorted by strictly decreasing exponent.  Floating coefficients below
    ``1e-12`` times the largest input magnitude (or ``zero_scale``) are
    treated as zero.
    """
    terms = [(c, _check_exponent(as_rational(e))) for c, e in terms]
    coeffs = unify(c for c, _ in terms)
    exact = all_exact(coeffs)
    merged: dict = {}
    for c, (_, e) in zip(coeffs, terms):
        merged[e] = merged[e] + c if e in merged else c
    if exact:
        kept = [(normalize(c), e) for e, c in merged.items() if c != 0]
    else:
        scale = zero_scale if zero_scale is not None else max(
            (magnitude(c) for c in coeffs), default=0.0)
        kept = [(c, e) for e, c in merged.items() if abs(c) > FLOAT_ZERO_RTOL * scale]
    kept.sort(key=lambda t: t[1], reverse=True)
    return GenPoly(tuple(kept))


def common_denominator(p: GenPoly) -> int:
    """Least common multiple of the exponent denominators."""
    if p.is_zero():
        raise ZeroPolynomial("common denominator of the zero polynomial")
    q = 1
    for _, e in p.terms:
        q = q * e.denominator // math.gcd(q, e.denominator)
    return q


def negate(p: GenPoly) -> GenPoly:
    return GenPoly(tuple((-c, e) for c, e in p.terms))


def add(p: GenPoly, r: GenPoly) -> GenPoly:
    return make_genpoly(list(p.terms) + list(r.terms))


def mul(p: GenPoly, r: GenPoly) -> GenPoly:
    if p.is_zero() or r.is_zero():
        return GenPoly(())
    prod = [(a * b, ea + eb) for a, ea in _unified_terms(p, r)[0]
            for b, eb in _unified_terms(p, r)[1]]
    scale = None
    if not (p.exact and r.exact):
        scale = max(magnitude(c) for c, _ in p.terms) * max(magnitude(c) for c, _ in r.terms)
    return make_genpoly(prod, zero_scale=scale)


def _unified_terms(p: GenPoly, r: GenPoly):
    if p.exact and r.exact:
        return p.terms, r.terms
    return p.to_float().terms, r.to_float().terms


def scale_genpoly(p: GenPoly, s) -> GenPoly:
    return make_genpoly([(c * s, e) for c, e in p.terms])


def is_ordinary(p: GenPoly) -> bool:
    return all(e.denominator == 1 for _, e in p.terms)


def substitute_down(p: GenPoly, q: int) -> IntPoly:
    """Rewrite ``p`` as an ordinary polynomial in ``Y = X^{1/q}``."""
    if q < 1:
        raise IncompatibleDenominator(f"q must be a positive integer, got {q}")
    if p.is_zero():
        return IntPoly(())
    if q % common_denominator(p):
        raise IncompatibleDenominator(
            f"q={q} is not a multiple of the common denominator {common_denominator(p)}")
    deg = int(p.degree * q)
    zero = Fraction(0) if p.exact else 0j
    asc = [zero] * (deg + 1)
    for c, e in p.terms:
        asc[int(e * q)] = c
    return IntPoly.from_ascending(asc)


def substitute_up(P: IntPoly, q: int) -> GenPoly:
    """Inverse of :func:`substitute_down`: ``Y^k`` becomes ``X^{k/q}``."""
    if q < 1:
        raise IncompatibleDenominator(f"q must be a positive integer, got {q}")
    d = P.degree
    return make_genpoly([(c, Fraction(d - i, q)) for i, c in enumerate(P.coeffs) if c != 0])


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def format_exponent(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else "{" + format_rational(e) + "}"


def format_genpoly(p: GenPoly, var: str = "X") -> str:
    """Canonical text: ``(-5/2+3i) X^{3/4} - 5 X^2 + 864``."""
    if p.is_zero():
        return "0"
    parts = []
    for c, e in p.terms:
        sign, body = _split_sign(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{format_exponent(e)}")
        if mono and body == "1":
            text = mono
        elif mono:
            text = f"{body} {mono}"
        else:
            text = body
        parts.append((sign, text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def _split_sign(c):
    """Split a coefficient into a sign and an unsigned text body."""
    if is_exact(c):
        c = normalize(c)
        if isinstance(c, Fraction):
            return ("-" if c < 0 else "+"), format_scalar(abs(c))
        return "+", format_scalar(c)
    z = complex(c)
    if z.imag == 0:
        return ("-" if math.copysign(1.0, z.real) < 0 else "+"), repr(abs(z.real))
    return "+", format_scalar(z)


_NUM = r"[0-9]+(?:\.[0-9]*)?(?:[eE][-+]?[0-9]+)?(?:/[0-9]+)?"
_GP_TOKEN = re.compile(rf"""
    \s*(?:
      \((?P<cre>[-+]?{_NUM})(?P<cim>[-+]{_NUM})i\)
     |(?P<num>{_NUM})
     |(?P<var>[A-Za-z])
     |\^(?:\{{(?P<bexp>[0-9]+(?:/[0-9]+)?)\}}|(?P<iexp>[0-9]+))
     |(?P<sign>[-+])
    )""", re.VERBOSE)


def _parse_number(text: str):
    """Integers and p/q are exact; decimal literals give floating coefficients."""
    neg = text.startswith("-")
    text = text.lstrip("+-")
    if "/" in text:
        n, d = text.split("/")
        if any(ch in n + d for ch in ".eE"):
            value = float(n) / float(d)
        else:
            value = Fraction(int(n), int(d))
    elif any(ch in text for ch in ".eE"):
        value = float(text)
    else:
        value = Fraction(int(text))
    return -value if neg else value


def parse_genpoly(text: str, var: str = "X") -> GenPoly:
    """Parse the canonical text form produced by :func:`format_genpoly`.

    Exponent braces are mandatory for non-integer exponents (``X^{3/4}``).
    """
    text = text.strip()
    if text == "0":
        return GenPoly(())
    terms = []
    sign, coeff, exponent, have_term = 1, None, None, False
    pos = 0
    while pos < len(text):
        m = _GP_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse generalized polynomial near {text[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            if have_term:
                terms.append(((coeff if coeff is not None else 1) * sign, exponent or 0))
                coeff, exponent, have_term, sign = None, None, False, 1
            if m.group("sign") == "-":
                sign = -sign
        elif m.group("cre") is not None:
            if have_term:
                raise ValueError(f"unexpected coefficient in {text!r}")
            re_part, im_part = _parse_number(m.group("cre")), _parse_number(m.group("cim"))
            if is_exact(re_part) and is_exact(im_part):
                coeff = normalize(ExactComplex(re_part, im_part))
            else:
                coeff = complex(float(re_part), float(im_part))
            have_term = True
        elif m.group("num"):
            if have_term:
                raise ValueError(f"unexpected coefficient in {text!r}")
            coeff = _parse_number(m.group("num"))
            have_term = True
        elif m.group("var"):
            if m.group("var") != var or exponent is not None:
                raise ValueError(f"unexpected variable {m.group('var')!r} in {text!r}")
            exponent = Fraction(1)
            have_term = True
        else:
            if exponent is None:
                raise ValueError(f"exponent without variable in {text!r}")
            exponent = Fraction(m.group("bexp") or m.group("iexp"))
    if not have_term:
        raise ValueError(f"dangling sign in generalized polynomial {text!r}")
    terms.append(((coeff if coeff is not None else 1) * sign, exponent or 0))
    return make_genpoly(terms)
