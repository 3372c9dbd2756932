"""Exponential polynomials ``sum_lambda p_lambda(t) e^{lambda t}``.

This class is closed under differentiation, integration and products, and
it is the space where constant-coefficient linear equations with such a
forcing have closed-form solutions.  Coefficients are exact (Fraction /
ExactComplex) when every coefficient and every exponent rate is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    ExactComplex,
    all_exact,
    format_rational,
    format_scalar,
    is_exact,
    normalize,
    to_complex,
)
from .special import hyp1f1_regularized_array


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _lam_key(lam):
    c = complex(lam)
    return (c.real, c.imag)


@dataclass(frozen=True)
class ExpPoly:
    """``terms = ((lam, (c0, c1, ...)), ...)``, polynomial coefficients ascending.

    Rates are pairwise distinct, every polynomial is nonzero and terms are
    sorted by rate (real part, then imaginary part).
    """

    terms: tuple = ()

    def __post_init__(self):
        flat = []
        for lam, poly in self.terms:
            flat.append(lam)
            flat.extend(poly)
        exact = all_exact(flat)
        merged: dict = {}
        order: list = []
        for lam, poly in self.terms:
            lam = normalize(lam) if exact else to_complex(lam)
            poly = [normalize(c) if exact else to_complex(c) for c in poly]
            if lam in merged:
                old = merged[lam]
                n = max(len(old), len(poly))
                zero = Fraction(0) if exact else 0j
                old = old + [zero] * (n - len(old))
                poly = poly + [zero] * (n - len(poly))
                merged[lam] = [x + y for x, y in zip(old, poly)]
            else:
                merged[lam] = poly
                order.append(lam)
        terms = []
        for lam in order:
            poly = _trim(list(merged[lam]))
            if poly:
                terms.append((lam, tuple(poly)))
        terms.sort(key=lambda t: _lam_key(t[0]))
        object.__setattr__(self, "terms", tuple(terms))

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "ExpPoly":
        return cls(((Fraction(0), (c,)),))

    @classmethod
    def exp(cls, lam, coeff=1) -> "ExpPoly":
        return cls(((lam, (coeff,)),))

    @classmethod
    def monomial(cls, k: int, lam=0, coeff=1) -> "ExpPoly":
        zero = Fraction(0) if is_exact(coeff) else 0j
        return cls(((lam, (zero,) * k + (coeff,)),))

    # properties -----------------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(is_exact(lam) and all_exact(p) for lam, p in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def rates(self) -> tuple:
        return tuple(lam for lam, _ in self.terms)

    def poly(self, lam) -> tuple:
        for l2, p in self.terms:
            if l2 == lam:
                return p
        return ()

    def to_float(self) -> "ExpPoly":
        return ExpPoly(tuple((complex(lam), tuple(complex(c) for c in p)) for lam, p in self.terms))

    # arithmetic -----------------------------------------------------------
    def _unified(self, other: "ExpPoly"):
        if self.exact and other.exact:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        a, b = self._unified(other)
        return ExpPoly(a.terms + b.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(tuple((lam, tuple(-c for c in p)) for lam, p in self.terms))

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExpPoly) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            if not is_exact(other):
                return self.to_float()._scale(to_complex(other))
            if not self.exact:
                return self._scale(to_complex(other))
            return self._scale(normalize(other))
        a, b = self._unified(other)
        exact = a.exact and b.exact
        zero = Fraction(0) if exact else 0j
        out = []
        for l1, p1 in a.terms:
            for l2, p2 in b.terms:
                prod = [zero] * (len(p1) + len(p2) - 1)
                for i, x in enumerate(p1):
                    for j, y in enumerate(p2):
                        prod[i + j] = prod[i + j] + x * y
                out.append((l1 + l2, tuple(prod)))
        return ExpPoly(tuple(out))

    __rmul__ = __mul__

    def _scale(self, s) -> "ExpPoly":
        return ExpPoly(tuple((lam, tuple(c * s for c in p)) for lam, p in self.terms))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("ExpPoly powers must be nonnegative integers")
        out = ExpPoly.constant(Fraction(1) if self.exact else 1 + 0j)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # calculus -------------------------------------------------------------
    def derivative(self, k: int = 1) -> "ExpPoly":
        out = self
        for _ in range(k):
            terms = []
            for lam, p in out.terms:
                dp = [c * i for i, c in enumerate(p)][1:]
                new = [lam * c for c in p]
                for i, c in enumerate(dp):
                    new[i] = new[i] + c
                terms.append((lam, tuple(new)))
            out = ExpPoly(tuple(terms))
        return out

    # evaluation -----------------------------------------------------------
    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        total = np.zeros(t.shape, dtype=complex)
        for lam, p in self.terms:
            poly = np.polyval([complex(c) for c in reversed(p)], t)
            total = total + poly * np.exp(complex(lam) * t)
        return total

    def at(self, t0):
        """Value at a single point; exact when every ``lam * t0`` is zero."""
        if self.exact and is_exact(t0) and all(lam * t0 == 0 for lam in self.rates):
            t0 = normalize(t0)
            total = Fraction(0)
            for _, p in self.terms:
                acc = Fraction(0)
                for c in reversed(p):
                    acc = acc * t0 + c
                total = total + acc
            return normalize(total)
        return complex(self(np.array([float(complex(t0).real)]))[0])

    def derivatives_at(self, t0, count: int) -> list:
        out = []
        cur = self
        for _ in range(count):
            out.append(cur.at(t0))
            cur = cur.derivative()
        return out

    def taylor_shift(self, a) -> "ExpPoly":
        """Polynomial parts rewritten in ``s = t - a``; rates unchanged.

        The returned object represents ``sum p(a + s) e^{lam a} e^{lam s}``
        as a function of ``s``.
        """
        if a == 0:
            return self
        out = []
        fa = float(a)
        for lam, p in self.terms:
            pc = [complex(c) for c in p]
            n = len(pc)
            shifted = [0j] * n
            for i, c in enumerate(pc):
                for j in range(i + 1):
                    shifted[j] += c * math.comb(i, j) * fa ** (i - j)
            factor = np.exp(complex(lam) * fa)
            out.append((complex(lam), tuple(c * factor for c in shifted)))
        return ExpPoly(tuple(out))

    def frac_integral_samples(self, nu, a, t) -> np.ndarray:
        """``I_a^nu`` of this function, sampled at the points ``t >= a``.

        Uses ``I^nu [s^j e^{lam s}] = j! s^{j+nu} 1F1~(j+1; j+1+nu; lam s)``
        with the regularized confluent hypergeometric function.
        """
        nu = float(nu)
        t = np.asarray(t, dtype=float)
        if nu == 0:
            return self(t)
        s = t - float(a)
        if np.any(s < -1e-14):
            raise ValueError("samples must lie at or after the base point")
        s = np.maximum(s, 0.0)
        total = np.zeros(s.shape, dtype=complex)
        for lam, p in self.taylor_shift(a).terms:
            lam = complex(lam)
            for j, c in enumerate(p):
                if c == 0:
                    continue
                hyp = hyp1f1_regularized_array(j + 1.0, j + 1.0 + nu, lam * s)
                total = total + complex(c) * math.factorial(j) * s ** (j + nu) * hyp
        return total

    # text -----------------------------------------------------------------
    def __str__(self):
        return format_exppoly(self)

    @classmethod
    def parse(cls, text: str) -> "ExpPoly":
        from .eqparser import parse_exppoly
        return parse_exppoly(text)


def _format_coeff_factor(c) -> tuple:
    """(sign, text) where text is the coefficient magnitude for a product."""
    if is_exact(c):
        c = normalize(c)
        if isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            txt = format_rational(mag)
            return sign, (txt if mag.denominator == 1 else f"({txt})")
        if c.re == 0:
            sign = "-" if c.im < 0 else "+"
            return sign, format_scalar(ExactComplex(0, abs(c.im)))
        return "+", format_scalar(c)
    z = complex(c)
    if z.imag == 0:
        sign = "-" if z.real < 0 else "+"
        return sign, repr(abs(z.real))
    return "+", format_scalar(z)


def _format_poly(p: tuple) -> tuple:
    """(sign, text, is_sum) for a polynomial in t."""
    nz = [(i, c) for i, c in enumerate(p) if c != 0]
    if len(nz) == 1:
        i, c = nz[0]
        sign, mag = _format_coeff_factor(c)
        return sign, _monomial_text(mag, i), False
    parts = []
    for i, c in nz:
        sign, mag = _format_coeff_factor(c)
        if i == 0 and mag.startswith("(") and "/" in mag and "i" not in mag:
            mag = mag[1:-1]
        txt = _monomial_text(mag, i)
        if not parts:
            parts.append(("-" if sign == "-" else "") + txt)
        else:
            parts.append(f"{sign} {txt}")
    return "+", "(" + " ".join(parts) + ")", True


def _monomial_text(mag: str, k: int) -> str:
    tpow = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
    if not tpow:
        return mag
    if mag == "1":
        return tpow
    return f"{mag} {tpow}"


def _format_rate(lam) -> str:
    if is_exact(lam):
        lam = normalize(lam)
        if isinstance(lam, Fraction):
            num, den = lam.numerator, lam.denominator
            head = {1: "t", -1: "-t"}.get(num, f"{num} t")
            return head if den == 1 else f"{head}/{den}"
        return f"{format_scalar(lam)} t"
    z = complex(lam)
    if z.imag == 0:
        return f"{z.real!r} t"
    return f"{format_scalar(z)} t"


def format_exppoly(e: ExpPoly) -> str:
    """Canonical text, e.g. ``(71/9734400 + (1/3993600) t) exp(t/16) - (1/18000) exp(t)``."""
    if e.is_zero():
        return "0"
    pieces = []
    for lam, p in e.terms:
        sign, body, _ = _format_poly(p)
        if lam != 0:
            rate = f"exp({_format_rate(lam)})"
            body = rate if body == "1" else f"{body} {rate}"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out

