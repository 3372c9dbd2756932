"""Special functions used by the fractional operators.

Series are summed in double precision; when the terms are much larger than
the result (heavy cancellation, e.g. large negative arguments) the sum is
redone with mpmath at a working precision raised by the number of digits
lost.
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from .errors import DomainError, PoleError

ML_SAFE_BOUND = 50.0
MAX_TERMS = 20000
_CANCELLATION_LIMIT = 1e6
ML_MAX_DIGITS = 300  # cancellation the series may absorb (roughly |z|^(1/alpha) / ln 10)
_ML_CANCELLATION_LIMIT = 1e2  # scalar evaluations can afford mpmath more often


def gamma(x: float) -> float:
    """Gamma function for real ``x``; PoleError at 0, -1, -2, ..."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x:g}")
    return math.gamma(x)


def rgamma(x: float) -> float:
    """``1 / Gamma(x)``, zero at the poles and safe beyond overflow."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        return 0.0
    if x > 170:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def _output(value: complex, z_input):
    if isinstance(z_input, complex):
        return value
    return value.real


def mittag_leffler(alpha: float, beta: float, z):
    """Two-parameter Mittag-Leffler function ``sum z^k / Gamma(alpha k + beta)``.

    Real input gives a real result.  ``|z|`` above ``ML_SAFE_BOUND``, or a
    series whose terms would exceed ``10^ML_MAX_DIGITS`` before cancelling
    (small ``alpha`` with large negative ``z``), raises DomainError rather
    than returning an unreliable value.
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError("Mittag-Leffler parameters must be positive")
    zc = complex(z)
    if abs(zc) > ML_SAFE_BOUND:
        raise DomainError(f"|z| = {abs(zc):g} exceeds the series bound {ML_SAFE_BOUND:g}")
    if zc == 0:
        return _output(complex(rgamma(beta)), z)
    # The largest term is about exp(|w|) with w = z^(1/alpha), while the sum
    # is about exp(Re w) inside the sector |arg z| < alpha pi / 2 and O(1)
    # outside it.  The difference is the number of digits lost to cancellation;
    # when that is large the sum goes straight to mpmath.
    peak_digits = _ml_lost_digits(alpha, zc)
    if peak_digits > ML_MAX_DIGITS:
        raise DomainError(f"E_(alpha,beta)(z) loses about {peak_digits:.0f} digits to cancellation at z = {zc}")
    if peak_digits > 12:
        return _output(_ml_mp(alpha, beta, zc, int(peak_digits) + 20), z)
    logz = cmath.log(zc)
    re_terms, im_terms = [], []
    total = 0j
    peak = 0.0
    small = 0
    power = 1 + 0j
    for k in range(MAX_TERMS):
        arg = alpha * k + beta
        if arg < 170 and abs(power) < 1e300:
            term = power / math.gamma(arg)
            power *= zc
        else:
            term = cmath.exp(k * logz - math.lgamma(arg))
        re_terms.append(term.real)
        im_terms.append(term.imag)
        total += term
        peak = max(peak, abs(term))
        if abs(term) < 1e-17 * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise DomainError("Mittag-Leffler series did not converge")
    total = complex(math.fsum(re_terms), math.fsum(im_terms))
    if peak > _ML_CANCELLATION_LIMIT * abs(total):
        total = _ml_mp(alpha, beta, zc, _extra_digits(peak / max(abs(total), 1e-300)))
    return _output(total, z)


def _ml_lost_digits(alpha: float, z: complex) -> float:
    if abs(z) <= 1:
        return 0.0
    w = cmath.exp(cmath.log(z) / alpha)
    growth = w.real if abs(cmath.phase(z)) < alpha * math.pi / 2 else 0.0
    return max(0.0, abs(w) - max(0.0, growth)) / math.log(10)


def _extra_digits(ratio: float) -> int:
    return int(math.log10(max(ratio, 10.0))) + 20


def _ml_mp(alpha, beta, z, extra_digits: int) -> complex:
    with mpmath.workdps(16 + extra_digits):
        zz = mpmath.mpc(z)
        total = mpmath.mpc(0)
        tiny = mpmath.mpf(10) ** (-(mpmath.mp.dps + 2))
        small = 0
        for k in range(MAX_TERMS):
            term = zz ** k * mpmath.rgamma(mpmath.mpf(alpha) * k + beta)
            total += term
            if abs(term) < tiny * abs(total):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        else:
            raise DomainError("Mittag-Leffler series did not converge")
        return complex(total)


def hyp1f1_regularized(a: float, b: float, z) -> complex:
    """Regularized confluent hypergeometric function ``1F1(a; b; z) / Gamma(b)``.

    Requires ``b > 0``.  For ``Re z < 0`` Kummer's transformation is used so
    the summed series has no sign alternation for real ``z``.
    """
    if b <= 0:
        raise DomainError("hyp1f1_regularized needs b > 0")
    zc = complex(z)
    if zc.real < 0:
        return cmath.exp(zc) * _hyp_series(b - a, b, -zc)
    return _hyp_series(a, b, zc)


def _hyp_series(a: float, b: float, z: complex) -> complex:
    term = complex(rgamma(b))
    if z == 0 or a == 0:
        return term
    total = term
    peak = abs(term)
    small = 0
    for k in range(MAX_TERMS):
        term *= (a + k) * z / ((k + 1) * (b + k))
        total += term
        peak = max(peak, abs(term))
        if abs(term) < 1e-17 * abs(total) and k > abs(z):
            small += 1
            if small >= 3:
                break
        elif term == 0:
            break
        else:
            small = 0
    else:
        raise DomainError("1F1 series did not converge")
    if peak > _CANCELLATION_LIMIT * abs(total):
        with mpmath.workdps(16 + _extra_digits(peak / max(abs(total), 1e-300))):
            total = complex(mpmath.hyp1f1(a, b, mpmath.mpc(z)) * mpmath.rgamma(b))
    return total


def hyp1f1_regularized_array(a: float, b: float, z) -> np.ndarray:
    """Vectorized :func:`hyp1f1_regularized` over an array of ``z``."""
    if b <= 0:
        raise DomainError("hyp1f1_regularized needs b > 0")
    z = np.asarray(z, dtype=complex)
    flip = z.real < 0
    w = np.where(flip, -z, z)
    aa = np.where(flip, b - a, a)
    term = np.full(z.shape, rgamma(b), dtype=complex)
    total = term.copy()
    peak = np.abs(term)
    zmax = float(np.max(np.abs(w))) if w.size else 0.0
    for k in range(MAX_TERMS):
        term = term * (aa + k) * w / ((k + 1) * (b + k))
        total += term
        peak = np.maximum(peak, np.abs(term))
        if k > zmax and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    else:
        raise DomainError("1F1 series did not converge")
    out = np.where(flip, np.exp(z) * total, total)
    bad = peak > _CANCELLATION_LIMIT * np.abs(total)
    for idx in np.flatnonzero(bad):
        out.flat[idx] = _hyp_mp(a, b, z.flat[idx])
    return out


def _hyp_mp(a: float, b: float, z: complex) -> complex:
    with mpmath.workdps(40):
        return complex(mpmath.hyp1f1(a, b, mpmath.mpc(z)) * mpmath.rgamma(b))
