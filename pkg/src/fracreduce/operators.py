"""Riemann-Liouville operators on uniform grids.

The fractional integral uses product integration: the piecewise-linear
interpolant of the samples is integrated exactly against the kernel
``(t - s)^(alpha - 1) / Gamma(alpha)``.  This is second-order accurate for
smooth data.  Data that behaves like ``(t - a)^gamma`` with non-integer
``gamma`` near the base point (for instance the output of an earlier
fractional integral) is listed in :attr:`GridFunction.singular`, and a few
starting weights are then corrected so that those powers are integrated
exactly as well, which keeps chained operators second order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .errors import BaseMismatch, OrderOutOfRange
from .exact import is_exact, to_complex, unify
from .genpoly import as_rational
from .special import gamma, mittag_leffler, rgamma

__all__ = [
    "GridFunction", "FracOperator", "gamma", "mittag_leffler", "frac_integral",
    "frac_integral_exp_closed", "gl_frac_derivative", "apply_operator",
    "grid_derivative", "product_trapezoid_weights",
]

SINGULAR_CUTOFF = 2.0  # powers at or above this are smooth enough for the base rule
_EXP_ROUND = 12


def _close_exponents(exps: Iterable[float]) -> tuple:
    """Non-integer exponents below the cutoff, closed under ``+1``."""
    out = set()
    for g in exps:
        g = float(g)
        while g < SINGULAR_CUTOFF - 1e-12:
            if g > 0 and abs(g - round(g)) > 1e-9:
                out.add(round(g, _EXP_ROUND))
            g += 1.0
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples ``values[k]`` at ``t_k = a + k (b - a) / n``, k = 0..n.

    ``singular`` lists non-integer powers of ``t - a`` that may be present in
    the sampled function near ``a``; the quadrature corrects for them.
    """

    a: float
    b: float
    n: int
    values: np.ndarray
    singular: tuple = field(default=())

    def __post_init__(self):
        if not (self.b > self.a):
            raise ValueError("grid needs b > a")
        if self.n < 1:
            raise ValueError("grid needs n >= 1")
        vals = np.asarray(self.values)
        if vals.shape != (self.n + 1,):
            raise ValueError(f"expected {self.n + 1} samples, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid values must be finite")
        if not np.iscomplexobj(vals):
            vals = vals.astype(float)
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "singular", _close_exponents(self.singular))

    @classmethod
    def from_function(cls, fn: Callable, a: float, b: float, n: int,
                      singular: Iterable = ()) -> "GridFunction":
        t = np.linspace(a, b, n + 1)
        return cls(a, b, n, np.asarray(fn(t)) * np.ones_like(t), tuple(singular))

    @classmethod
    def zeros(cls, a: float, b: float, n: int) -> "GridFunction":
        return cls(a, b, n, np.zeros(n + 1))

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n + 1)

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    def like(self, values, singular: Iterable = ()) -> "GridFunction":
        return GridFunction(self.a, self.b, self.n, values, tuple(singular))

    def same_grid(self, other: "GridFunction") -> bool:
        return (self.n == other.n and math.isclose(self.a, other.a, abs_tol=1e-12)
                and math.isclose(self.b, other.b, rel_tol=1e-12, abs_tol=1e-12))

    def _check(self, other: "GridFunction"):
        if not self.same_grid(other):
            raise BaseMismatch("grid functions live on different grids")

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return self.like(self.values + other.values, self.singular + other.singular)
        return self.like(self.values + other, self.singular)

    __radd__ = __add__

    def __neg__(self):
        return self.like(-self.values, self.singular)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s):
        if isinstance(s, GridFunction):
            self._check(s)
            return self.like(self.values * s.values, self.singular + s.singular)
        s = to_complex(s)
        return self.like(self.values * (s if s.imag else s.real), self.singular)

    __rmul__ = __mul__

    def sup_norm(self, skip_first: bool = False) -> float:
        v = self.values[1:] if skip_first else self.values
        return float(np.max(np.abs(v))) if v.size else 0.0

    # serialization --------------------------------------------------------
    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        vals = np.asarray(self.values, dtype=complex)
        for t, v in zip(self.t, vals):
            w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridFunction":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["t", "re", "im"]:
            raise ValueError("CSV must start with the header t,re,im")
        data = [r for r in rows[1:] if r]
        if len(data) < 2:
            raise ValueError("CSV needs at least two samples")
        t = np.array([float(r[0]) for r in data])
        vals = np.array([complex(float(r[1]), float(r[2])) for r in data])
        n = len(t) - 1
        a, b = float(t[0]), float(t[-1])
        if not np.allclose(t, np.linspace(a, b, n + 1), rtol=1e-9, atol=1e-12 * max(1.0, abs(b))):
            raise ValueError("CSV samples must lie on a uniform grid")
        if np.all(vals.imag == 0):
            vals = vals.real
        return cls(a, b, n, vals)

    def to_json(self) -> str:
        vals = np.asarray(self.values, dtype=complex)
        return json.dumps({"a": self.a, "b": self.b, "n": self.n,
                           "values": [[float(v.real), float(v.imag)] for v in vals]})

    @classmethod
    def from_json(cls, text: str) -> "GridFunction":
        d = json.loads(text)
        vals = []
        for v in d["values"]:
            vals.append(complex(v[0], v[1]) if isinstance(v, list) else complex(v))
        vals = np.array(vals)
        if np.all(vals.imag == 0):
            vals = vals.real
        return cls(d["a"], d["b"], int(d["n"]), vals)


@dataclass(frozen=True)
class FracOperator:
    """``sum coeff * I_a^order``; order 0 is the identity."""

    base: float
    terms: tuple  # ((coeff, Fraction order), ...), strictly decreasing orders

    def __post_init__(self):
        raw = [(c, as_rational(r)) for c, r in self.terms]
        if any(r < 0 for _, r in raw):
            raise OrderOutOfRange("operator orders must be nonnegative")
        coeffs = unify(c for c, _ in raw)
        merged: dict = {}
        for c, (_, r) in zip(coeffs, raw):
            merged[r] = merged.get(r, 0) + c
        terms = tuple(sorted(((c, r) for r, c in merged.items() if c != 0),
                             key=lambda t: t[1], reverse=True))
        object.__setattr__(self, "base", float(self.base))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def identity(cls, base: float = 0.0) -> "FracOperator":
        return cls(base, ((Fraction(1), Fraction(0)),))

    @property
    def orders(self) -> tuple:
        return tuple(r for _, r in self.terms)

    @property
    def coefficients(self) -> tuple:
        return tuple(c for c, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lowest_order(self) -> Fraction:
        return self.terms[-1][1]

    @property
    def has_identity(self) -> bool:
        return bool(self.terms) and self.terms[-1][1] == 0

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c, _ in self.terms)

    def __str__(self):
        from .eqparser import format_operator
        return format_operator(self)


# ---------------------------------------------------------------------------
# quadrature weights
# ---------------------------------------------------------------------------

def _binom_series(p: float, x: np.ndarray, even_only: bool, start: int, terms: int = 14) -> np.ndarray:
    """``sum_{j>=start} C(p, j) (-x)^j`` restricted to even ``j`` if asked."""
    out = np.zeros_like(x)
    coef = 1.0
    for j in range(1, start + 2 * terms + 1):
        coef *= (p - j + 1) / j
        if j < start or (even_only and j % 2):
            continue
        out += coef * (-x) ** j
    return out


def product_trapezoid_weights(alpha: float, n: int):
    """Weights ``b_k`` (k = 0..n) and start weights ``w0_m`` (m = 1..n).

    ``I^alpha f(t_m) ~ h^alpha / Gamma(alpha + 2) * (w0_m f_0 + sum_{j=1}^m b_{m-j} f_j)``

    with ``b_0 = 1``, ``b_k = (k+1)^p - 2 k^p + (k-1)^p`` and
    ``w0_m = (m-1)^p - (m-1-alpha) m^alpha`` for ``p = alpha + 1``.  For large
    arguments both are second differences of nearly equal numbers, so they
    are evaluated from binomial series instead.
    """
    p = alpha + 1.0
    k = np.arange(n + 1, dtype=float)
    b = np.empty(n + 1)
    b[0] = 1.0
    w0 = np.empty(n)
    switch = 64
    kk = k[1:]
    direct = kk < switch
    b[1:][direct] = (kk[direct] + 1) ** p - 2 * kk[direct] ** p + (kk[direct] - 1) ** p
    w0[direct] = (kk[direct] - 1) ** p - (kk[direct] - 1 - alpha) * kk[direct] ** alpha
    big = ~direct
    if big.any():
        x = 1.0 / kk[big]
        # (1+x)^p + (1-x)^p - 2 = 2 * sum_{even j >= 2} C(p, j) x^j
        b[1:][big] = kk[big] ** p * 2.0 * _binom_series(p, x, even_only=True, start=2)
        # (1-x)^p - (1 - p x) = sum_{j >= 2} C(p, j) (-x)^j
        w0[big] = kk[big] ** p * _binom_series(p, x, even_only=False, start=2)
    return b, w0


def _base_sums(f: np.ndarray, alpha: float, b: np.ndarray, w0: np.ndarray) -> np.ndarray:
    """Unscaled product-trapezoid sums for every node (value 0 at node 0)."""
    n = f.shape[-1] - 1
    out = np.zeros(f.shape, dtype=np.result_type(f, float))
    conv = np.convolve(b, f)[: n + 1]
    out[1:] = (conv[1:] - b[1:] * f[0] + w0 * f[0]) / math.gamma(alpha + 2)
    return out


def correction_weights(alpha: float, n: int, exponents: tuple) -> np.ndarray:
    """Starting weights ``W`` of shape ``(s + 2, n + 1)`` for the listed powers.

    ``h^alpha * (base + W.T @ f[0:s+2])`` integrates ``(t - a)^gamma`` exactly
    for every listed ``gamma`` while staying exact for ``1`` and ``t - a``,
    which the base rule already integrates exactly.  Row ``j`` of ``W``
    weighs the sample at node ``j``.
    """
    powers = (0.0, 1.0) + tuple(exponents)
    b, w0 = product_trapezoid_weights(alpha, n)
    m = np.arange(n + 1, dtype=float)
    j = np.arange(len(powers), dtype=float)
    V = np.array([j ** g for g in powers])
    E = np.zeros((len(powers), n + 1))
    for row, g in enumerate(powers[2:], start=2):
        E[row] = (math.gamma(g + 1) * rgamma(g + 1 + alpha) * m ** (g + alpha)
                  - _base_sums(m ** g, alpha, b, w0))
    W = np.linalg.solve(V, E)
    W[:, 0] = 0.0
    return W


def _output_singular(alpha: float, singular: tuple) -> tuple:
    return _close_exponents([alpha + g for g in (0.0, 1.0) + tuple(singular)])


def frac_integral(f: GridFunction, alpha, corrected: bool = True) -> GridFunction:
    """Riemann-Liouville integral ``I_a^alpha f`` on the grid of ``f``.

    Set ``corrected=False`` to use the plain product-trapezoid rule even when
    ``f`` declares singular powers.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise OrderOutOfRange("fractional integral needs alpha > 0")
    vals = f.values
    n = f.n
    b, w0 = product_trapezoid_weights(alpha, n)
    out = _base_sums(vals, alpha, b, w0)
    exps = f.singular if corrected else ()
    if exps and n > len(exps) + 2:
        W = correction_weights(alpha, n, exps)
        out = out + W.T @ vals[: W.shape[0]]
    out = out * f.h ** alpha
    return f.like(out, _output_singular(alpha, f.singular))


def gl_frac_derivative(f: GridFunction, alpha) -> GridFunction:
    """Grunwald-Letnikov approximation of the Riemann-Liouville derivative.

    First order accurate; intended for data that vanishes at the base point.
    """
    alpha = float(alpha)
    if not 0 < alpha < 1:
        raise OrderOutOfRange("GL derivative implemented for 0 < alpha < 1 only")
    n = f.n
    g = np.empty(n + 1)
    g[0] = 1.0
    for k in range(1, n + 1):
        g[k] = g[k - 1] * (1.0 - (alpha + 1.0) / k)
    out = np.convolve(g, f.values)[: n + 1] / f.h ** alpha
    return f.like(out)


def grid_derivative(f: GridFunction, order: int = 1) -> GridFunction:
    """Integer-order derivative by second-order finite differences."""
    vals = f.values
    for _ in range(order):
        vals = np.gradient(vals, f.h, edge_order=2)
    return f.like(vals, [g - order for g in f.singular if g - order > 0])


def apply_operator(T: FracOperator, f: GridFunction) -> GridFunction:
    """``sum coeff * I^order f``; the identity term bypasses quadrature."""
    if not math.isclose(T.base, f.a, abs_tol=1e-12):
        raise BaseMismatch(f"operator base {T.base} differs from grid start {f.a}")
    complex_out = np.iscomplexobj(f.values) or any(complex(c).imag for c, _ in T.terms)
    dtype = complex if complex_out else float
    total = np.zeros(f.n + 1, dtype=dtype)
    singular: list = []
    for c, r in T.terms:
        c = complex(c) if complex_out else float(complex(c).real)
        if r == 0:
            total = total + c * f.values
            singular.extend(f.singular)
        else:
            part = frac_integral(f, r)
            total = total + c * part.values
            singular.extend(part.singular)
    return f.like(total, singular)


def frac_integral_exp_closed(alpha, lam, t):
    """``I_0^alpha [e^{lam s}](t) = t^alpha E_{1, 1+alpha}(lam t)``.

    ``t`` may be a scalar or an array of nonnegative values.
    """
    alpha = float(alpha)
    lam = complex(lam)

    def one(tt: float) -> complex:
        if tt < 0:
            raise ValueError("t must be nonnegative")
        if tt == 0:
            return 0j
        return tt ** alpha * complex(mittag_leffler(1.0, 1.0 + alpha, lam * tt + 0j))

    if np.ndim(t) == 0:
        return one(float(t))
    return np.array([one(float(tt)) for tt in np.asarray(t)])

