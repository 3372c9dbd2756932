"""Independent reference computations used to freeze expected values.

Nothing here imports the package under test.  The quadrature oracle uses
mpmath's tanh-sinh rule, which handles the endpoint singularity of the
Riemann-Liouville kernel.  The equation oracle discretizes the fractional
equation directly, giving each ``I^r`` its own product-integration weights,
with no conjugate operator and no reduction.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np


def rl_integral_quad(f, alpha, t, a=0.0, dps=30):
    """``(1/Gamma(alpha)) int_a^t f(s) (t - s)^(alpha - 1) ds`` by adaptive quadrature.

    The substitution ``u = (t - s)^alpha`` removes the endpoint singularity:
    the integral becomes ``(1/Gamma(alpha + 1)) int_0^{(t-a)^alpha} f(t - u^(1/alpha)) du``.
    """
    with mpmath.workdps(dps):
        alpha = mpmath.mpf(alpha)
        t = mpmath.mpf(t)
        a = mpmath.mpf(a)
        top = (t - a) ** alpha
        val = mpmath.quad(lambda u: f(t - u ** (1 / alpha)), [0, top / 2, top]) / mpmath.gamma(alpha + 1)
        return complex(val)


def trapezoid_weights(r: float, n: int) -> np.ndarray:
    """Row-independent product-trapezoid weights ``W[m, j]`` for ``I^r`` on a unit-step grid.

    Built from the exact integrals of the two hat-function halves against
    ``(t_m - s)^(r - 1) / Gamma(r)``, written out per interval.  The caller
    multiplies by ``h^r``.  Dense O(n^2) storage keeps the code obvious.
    """
    W = np.zeros((n + 1, n + 1))
    g = math.gamma(r + 2)
    for m in range(1, n + 1):
        # interval [k, k+1] with k = 0..m-1, distance u = m - s
        k = np.arange(m)
        u_hi = (m - k).astype(float)  # at s = k
        u_lo = u_hi - 1.0  # at s = k+1
        # int over the interval of (m-s)^(r-1) * (k+1-s) and * (s-k), times Gamma(r)
        A = (u_hi ** (r + 1) - u_lo ** (r + 1)) / (r + 1)  # int u^r
        B = (u_hi ** r - u_lo ** r) / r  # int u^(r-1)
        # (k+1-s) = 1 - (u_hi - u) = u - u_lo ; (s-k) = u_hi - u
        left = A - u_lo * B  # weight for node k
        right = u_hi * B - A  # weight for node k+1
        np.add.at(W[m], k, left)
        np.add.at(W[m], k + 1, right)
        W[m, : m + 1] *= r * (r + 1) / g  # 1/Gamma(r) = r(r+1)/Gamma(r+2)
    return W


def solve_foie_direct(terms, w, a: float, b: float, n: int) -> np.ndarray:
    """Second-kind stepping for ``sum c I^r x = w`` with an identity term.

    ``terms`` is a list of ``(c, r)`` with float orders; ``w`` a callable.
    """
    h = (b - a) / n
    t = a + h * np.arange(n + 1)
    c0 = sum(c for c, r in terms if r == 0)
    frac = [(c, r) for c, r in terms if r != 0]
    K = np.zeros((n + 1, n + 1), dtype=complex)
    for c, r in frac:
        K += c * h ** r * trapezoid_weights(r, n)
    rhs = np.asarray(w(t), dtype=complex)
    x = np.zeros(n + 1, dtype=complex)
    x[0] = rhs[0] / c0
    for m in range(1, n + 1):
        known = K[m, :m] @ x[:m]
        x[m] = (rhs[m] - known) / (c0 + K[m, m])
    return x
