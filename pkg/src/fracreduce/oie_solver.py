"""Integer-order integral equations ``c0 I^n x + ... + c_{n-1} I x + c_n x = f``.

Two independent routes are provided:

* :func:`solve_volterra` steps the discretized second-kind equation forward
  on a grid, using the same product-trapezoid weights as the operators
  module;
* for exponential-polynomial forcing, differentiating ``n`` times gives the
  constant-coefficient ODE ``c0 x + c1 x' + ... + c_n x^(n) = f^(n)`` whose
  initial values follow from the equation at ``t = a``;
  :func:`solve_ode_closed` then solves it in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DegenerateLeading, FirstKindUnsupported, IllConditioned, SingularStep
from .exact import is_exact, normalize, to_complex, unify
from .exppoly import ExpPoly
from .genpoly import IntPoly
from .operators import GridFunction, correction_weights, product_trapezoid_weights
from .rootfind import find_roots

COND_LIMIT = 1e12
DIAGONAL_FLOOR = 1e-14


@dataclass(frozen=True)
class IntOrderEquation:
    """``sum_k coeffs[k] I^(n-k) x = rhs`` on ``[base, ...)``.

    ``coeffs[0]`` multiplies ``I^n`` and ``coeffs[n]`` multiplies ``x``.
    ``n = 0`` (a purely algebraic equation) is allowed.
    """

    coeffs: tuple
    base: float
    rhs: Union[ExpPoly, GridFunction]

    def __post_init__(self):
        coeffs = tuple(unify(self.coeffs))
        if not coeffs:
            raise ValueError("equation needs at least one coefficient")
        if coeffs[0] == 0:
            raise ValueError("leading coefficient c0 must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)


# ---------------------------------------------------------------------------
# numeric route
# ---------------------------------------------------------------------------

def solve_volterra(eq: IntOrderEquation) -> GridFunction:
    """Forward substitution through the triangular quadrature system.

    Powers listed in ``rhs.singular`` are carried over to the unknown and the
    corresponding starting corrections are solved for jointly in the first
    few rows.
    """
    f = eq.rhs
    if not isinstance(f, GridFunction):
        raise TypeError("solve_volterra needs a grid right-hand side")
    n_ord = eq.order
    cn = complex(eq.coeffs[-1])
    if cn == 0:
        raise FirstKindUnsupported("first-kind equation (no identity term) cannot be stepped")
    N = f.n
    h = f.h
    fv = np.asarray(f.values, dtype=complex)
    exps = f.singular
    use_corr = bool(exps) and N > len(exps) + 2
    S = len(exps) + 1 if use_corr else 0  # unknowns x_1..x_S touched by corrections
    kernel = np.zeros(N + 1, dtype=complex)
    start = np.zeros(N + 1, dtype=complex)  # weight on x_0 at node i
    corr = np.zeros((S + 1, N + 1), dtype=complex)  # weight on x_0..x_S at node i
    for m in range(1, n_ord + 1):
        c = complex(eq.coeffs[n_ord - m])
        if c == 0:
            continue
        b, w0 = product_trapezoid_weights(float(m), N)
        scale = c * h ** m / math.gamma(m + 2)
        kernel += scale * b
        start[1:] += scale * (w0 - b[1:])
        if use_corr:
            corr += c * h ** m * correction_weights(float(m), N, exps)
    diag = cn + kernel[0]
    if abs(diag) < DIAGONAL_FLOOR:
        raise SingularStep("diagonal coefficient vanishes")
    x = np.zeros(N + 1, dtype=complex)
    x[0] = fv[0] / cn
    rev = kernel[::-1]  # rev[N - k] = kernel[k]
    if S:
        # rows 1..S couple x_1..x_S through the starting corrections
        A = np.zeros((S, S), dtype=complex)
        rhs = np.zeros(S, dtype=complex)
        for r, i in enumerate(range(1, S + 1)):
            for cidx, j in enumerate(range(1, S + 1)):
                A[r, cidx] = corr[j, i] + (kernel[i - j] if j < i else 0)
            A[r, r] += diag
            rhs[r] = fv[i] - (start[i] + kernel[i] + corr[0, i]) * x[0]
        if np.linalg.cond(A) > COND_LIMIT:
            raise SingularStep("starting system is singular")
        x[1: S + 1] = np.linalg.solve(A, rhs)
    for i in range(S + 1, N + 1):
        # sum_{j=0}^{i-1} kernel[i-j] x_j
        hist = np.dot(rev[N - i: N], x[:i])
        acc = fv[i] - hist - start[i] * x[0]
        if S:
            acc -= corr[:, i] @ x[: S + 1]
        x[i] = acc / diag
    vals = x.real if (not np.iscomplexobj(f.values) and all(
        complex(c).imag == 0 for c in eq.coeffs)) else x
    return f.like(vals, exps)


# ---------------------------------------------------------------------------
# closed-form route
# ---------------------------------------------------------------------------

def reduce_to_ode(eq: IntOrderEquation):
    """ODE coefficients (``ode[k]`` multiplies ``x^(k)``) and ``D^n rhs``."""
    if not isinstance(eq.rhs, ExpPoly):
        raise TypeError("reduce_to_ode needs an ExpPoly right-hand side")
    return tuple(eq.coeffs), eq.rhs.derivative(eq.order)


def initial_conditions(eq: IntOrderEquation) -> list:
    """``x(a), x'(a), ..., x^(n-1)(a)`` from the equation and its derivatives at ``a``."""
    n = eq.order
    cn = eq.coeffs[-1]
    if cn == 0:
        raise DegenerateLeading("the coefficient of x vanishes")
    a = _base_value(eq.base)
    derivs = eq.rhs.derivatives_at(a, n)
    exact = eq.exact and all(is_exact(v) for v in derivs)
    if not exact:
        derivs = [to_complex(v) for v in derivs]
        coeffs = [to_complex(c) for c in eq.coeffs]
        cn = coeffs[-1]
    else:
        coeffs = list(eq.coeffs)
    out: list = []
    for k in range(n):
        acc = derivs[k]
        for j in range(1, k + 1):
            acc = acc - coeffs[n - j] * out[k - j]
        out.append(normalize(acc / cn) if exact else acc / cn)
    return out


def _base_value(a):
    """Exact representation of the base point when it is a short decimal."""
    if is_exact(a):
        return normalize(a)
    fr = Fraction(a).limit_denominator(10**6)
    return fr if float(fr) == float(a) else a


def characteristic_polynomial(ode_coeffs) -> IntPoly:
    return IntPoly.from_ascending(list(ode_coeffs))


def _taylor_at(P: IntPoly, lam) -> list:
    """``P^(j)(lam) / j!`` for j = 0..deg P."""
    out = []
    cur = P
    fact = 1
    for j in range(P.degree + 1):
        out.append(cur(lam) / fact if is_exact(lam) and cur.exact else complex(cur(lam)) / fact)
        cur = cur.derivative()
        fact *= j + 1
    return out


def _multiplicity(taylor: list, exact: bool, scale: float) -> int:
    mu = 0
    for v in taylor:
        if (v == 0) if exact else (abs(v) <= 1e-9 * scale):
            mu += 1
        else:
            break
    return mu


def particular_solution(ode_coeffs, rhs: ExpPoly) -> ExpPoly:
    """Undetermined coefficients with the resonance shift.

    For a forcing ``p(t) e^{lam t}`` with ``lam`` a characteristic root of
    multiplicity ``mu`` the ansatz is ``t^mu w(t) e^{lam t}``-type: the
    ``mu``-fold antiderivative of the polynomial ``w`` solving
    ``sum_{j >= mu} P^(j)(lam)/j! w^(j-mu) = p``.
    """
    P = characteristic_polynomial(ode_coeffs)
    if P.degree == 0:
        c0 = P.coeffs[0]
        return rhs * (Fraction(1) / c0 if is_exact(c0) and rhs.exact else 1 / complex(c0))
    exact = P.exact and rhs.exact
    scale = max(abs(complex(c)) for c in P.coeffs)
    terms = []
    for lam, p in rhs.terms:
        taylor = _taylor_at(P, lam)
        mu = _multiplicity(taylor, exact, scale)
        lead = taylor[mu]
        d = len(p) - 1
        w = [None] * (d + 1)
        for k in range(d, -1, -1):
            acc = p[k]
            for i in range(1, d - k + 1):
                if mu + i < len(taylor):
                    acc = acc - taylor[mu + i] * w[k + i] * (math.factorial(k + i) // math.factorial(k))
            w[k] = acc / lead
        zero = Fraction(0) if exact else 0j
        q = [zero] * mu + [w[k] * Fraction(math.factorial(k), math.factorial(k + mu))
                           if exact else w[k] * math.factorial(k) / math.factorial(k + mu)
                           for k in range(d + 1)]
        terms.append((lam, tuple(q)))
    return ExpPoly(tuple(terms))


def _homogeneous_basis(P: IntPoly) -> list:
    if P.degree == 0:
        return []
    roots = find_roots(P)
    basis = []
    for m, mult in roots.roots:
        for j in range(mult):
            basis.append(((m, j), ExpPoly.monomial(j, lam=m, coeff=Fraction(1) if is_exact(m) else 1 + 0j)))
    return basis


def _solve_linear(M: list, rhs: list, exact: bool) -> list:
    n = len(rhs)
    if n == 0:
        return []
    if exact:
        A = [list(row) + [r] for row, r in zip(M, rhs)]
        for col in range(n):
            piv = next((r for r in range(col, n) if A[r][col] != 0), None)
            if piv is None:
                raise IllConditioned("constants system is singular")
            A[col], A[piv] = A[piv], A[col]
            for r in range(n):
                if r != col and A[r][col] != 0:
                    f = A[r][col] / A[col][col]
                    A[r] = [x - f * y for x, y in zip(A[r], A[col])]
        return [normalize(A[i][n] / A[i][i]) for i in range(n)]
    Mf = np.array([[complex(v) for v in row] for row in M])
    cond = np.linalg.cond(Mf)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(f"constants system condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    return list(np.linalg.solve(Mf, np.array([complex(v) for v in rhs])))


def ode_constants(ode_coeffs, rhs: ExpPoly, init: list, base=0):
    """Particular solution and homogeneous constants ``[((root, j), C), ...]``.

    The homogeneous basis is ``t^j e^{root t}``.
    """
    P = characteristic_polynomial(ode_coeffs)
    if P.leading == 0:
        raise DegenerateLeading("leading ODE coefficient vanishes")
    yp = particular_solution(ode_coeffs, rhs)
    basis = _homogeneous_basis(P)
    n = P.degree
    if len(init) != n:
        raise ValueError(f"expected {n} initial values, got {len(init)}")
    a = _base_value(base)
    cols = [b.derivatives_at(a, n) for _, b in basis]
    yp_d = yp.derivatives_at(a, n)
    values = cols + [yp_d, list(init)]
    exact = P.exact and all(is_exact(v) for vs in values for v in vs)
    M = [[cols[c][k] for c in range(len(basis))] for k in range(n)]
    r = [init[k] - yp_d[k] for k in range(n)]
    C = _solve_linear(M, r, exact)
    return yp, [(key, c) for (key, _), c in zip(basis, C)]


def solve_ode_closed(ode_coeffs, rhs: ExpPoly, init: list, base=0) -> ExpPoly:
    """Closed-form solution of ``sum ode[k] y^(k) = rhs`` with ``y^(k)(base) = init[k]``."""
    yp, consts = ode_constants(ode_coeffs, rhs, init, base)
    y = yp
    for (m, j), c in consts:
        if c != 0:
            y = y + ExpPoly.monomial(j, lam=m, coeff=c)
    return y


def ode_residual(ode_coeffs, y: ExpPoly, rhs: ExpPoly) -> ExpPoly:
    """``sum ode[k] y^(k) - rhs`` computed symbolically."""
    total = -rhs
    cur = y
    for c in ode_coeffs:
        total = total + cur * c
        cur = cur.derivative()
    return total


def solve_closed(eq: IntOrderEquation) -> ExpPoly:
    """Closed-form solution of an integer-order equation with ExpPoly forcing."""
    ode, g = reduce_to_ode(eq)
    if eq.order == 0:
        return particular_solution(ode, eq.rhs)
    return solve_ode_closed(ode, g, initial_conditions(eq), eq.base)


def sample(e: ExpPoly, grid) -> GridFunction:
    """Evaluate ``e`` on the nodes of ``grid`` (a GridFunction or ``(a, b, n)``)."""
    if isinstance(grid, GridFunction):
        a, b, n = grid.a, grid.b, grid.n
    else:
        a, b, n = grid
    t = np.linspace(a, b, n + 1)
    vals = e(t)
    if e.exact and all(complex(lam).imag == 0 and all(complex(c).imag == 0 for c in p)
                       for lam, p in e.terms):
        vals = vals.real
    return GridFunction(a, b, n, vals)
