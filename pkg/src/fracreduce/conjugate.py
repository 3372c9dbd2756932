"""Conjugate generalized polynomials.

Given a generalized polynomial ``p`` with common exponent denominator ``q``,
a conjugate ``p_hat`` is a generalized polynomial such that ``p * p_hat`` has
integer exponents only.  Writing ``Y = X^{1/q}`` and ``p = c1 * prod(Y - r_i)``:

* the naive conjugate multiplies in every missing rotation
  ``Y - r_i xi^j`` (j = 1..q-1) of every root, scaled by ``c1^(q-1)`` so
  that ``p * p_hat = c1^q * prod(X - r_i^q)``.  For ``q = 2`` and even
  degree in ``Y`` this is ``p`` with its half-integer terms negated;
* the minimal conjugate works per orbit ``{y0 xi^j}``: with ``k_j`` the
  multiplicity of ``y0 xi^j`` in ``p`` and ``m = max k_j`` it adds
  ``(Y - y0 xi^j)^(m - k_j)``, so the orbit contributes ``(X - y0^q)^m``.
  A zero root of multiplicity ``k0`` contributes ``X^ceil(k0/q)``.

Exact polynomials never need their roots: the reduced polynomial is built
from power sums (roots ``r -> r^q``) and a squarefree decomposition, and
``p_hat`` is recovered by exact division ``reduced(Y^q) / p(Y)``.  Floating
polynomials go through the root finder, and the product is formed
explicitly so that root error shows up as a nonzero *integrality defect*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonConvergence, ReductionError, ZeroPolynomial
from .genpoly import (
    GenPoly,
    IntPoly,
    common_denominator,
    poly_gcd,
    root_power_poly,
    squarefree_decomposition,
    squarefree_part,
    substitute_down,
    substitute_up,
)
from .rootfind import DEFAULT_CLUSTER_TOL, cluster_orbits, find_roots, root_of_unity


@dataclass(frozen=True)
class ConjugateResult:
    p: GenPoly
    p_hat: GenPoly
    reduced: IntPoly  # p * p_hat as an ordinary polynomial in X
    q: int
    integrality_defect: float = 0.0
    minimal: bool = True

    @property
    def exact(self) -> bool:
        return self.p_hat.exact and self.reduced.exact


def conjugate_naive(p: GenPoly, exact: bool | None = None,
                    tol: float = DEFAULT_CLUSTER_TOL) -> ConjugateResult:
    """Conjugate built root by root, without merging related roots."""
    return _conjugate(p, minimal=False, exact=exact, tol=tol)


def conjugate_minimal(p: GenPoly, exact: bool | None = None,
                      tol: float = DEFAULT_CLUSTER_TOL) -> ConjugateResult:
    """Conjugate built orbit by orbit, giving the smallest reduced degree."""
    return _conjugate(p, minimal=True, exact=exact, tol=tol)


def conjugate(p: GenPoly, minimal: bool = True, exact: bool | None = None,
              tol: float = DEFAULT_CLUSTER_TOL) -> ConjugateResult:
    return _conjugate(p, minimal=minimal, exact=exact, tol=tol)


def _conjugate(p: GenPoly, minimal: bool, exact: bool | None, tol: float) -> ConjugateResult:
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no conjugate")
    use_exact = p.exact if exact is None else exact
    if use_exact and not p.exact:
        raise ValueError("exact construction requested for a floating polynomial")
    q = common_denominator(p)
    P = substitute_down(p if use_exact else p.to_float(), q)
    try:
        if use_exact:
            reduced = _reduced_exact(P, q, minimal)
            p_hat_y = _divide_exact(reduced.inflate(q), P)
            defect = 0.0
        else:
            p_hat_y = _p_hat_float(P, q, minimal, tol)
            reduced, defect = _cleanup(P * p_hat_y, q)
    except NonConvergence as exc:
        raise ReductionError(f"root finder failed: {exc}") from exc
    return ConjugateResult(p=p, p_hat=substitute_up(p_hat_y, q), reduced=reduced,
                           q=q, integrality_defect=defect, minimal=minimal)


# ---------------------------------------------------------------------------
# exact, root-free construction
# ---------------------------------------------------------------------------

def _reduced_exact(P: IntPoly, q: int, minimal: bool) -> IntPoly:
    c1 = P.leading
    k0 = P.lowest_degree()
    rest = (P // IntPoly.monomial(k0)).monic()
    if not minimal:
        return root_power_poly(rest, q).shift(k0).scale(c1 * _naive_scale(P, q))
    zero_power = -(-k0 // q)
    # B[k]: polynomial whose roots are the q-th powers of the roots of
    # multiplicity exactly k; C[k] = lcm of B[k'] for k' >= k collects the
    # orbits whose largest multiplicity is at least k.
    layers = {k: squarefree_part(root_power_poly(S, q))
              for S, k in squarefree_decomposition(rest)}
    result = IntPoly((1,))
    acc = IntPoly((1,))
    for k in range(max(layers, default=0), 0, -1):
        if k in layers:
            acc = _lcm(acc, layers[k])
        result = result * acc
    return result.shift(zero_power).scale(c1)


def _naive_scale(P: IntPoly, q: int):
    """Leading coefficient of the naive conjugate."""
    return P.leading ** (q - 1)


def _lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    return (a * (b // poly_gcd(a, b))).monic()


def _divide_exact(num: IntPoly, den: IntPoly) -> IntPoly:
    quo, rem = num.divmod(den)
    if not rem.is_zero():
        raise ReductionError("internal check failed: p does not divide its reduced form")
    return quo


# ---------------------------------------------------------------------------
# floating construction through roots
# ---------------------------------------------------------------------------

def _p_hat_float(P: IntPoly, q: int, minimal: bool, tol: float) -> IntPoly:
    if P.degree == 0:
        return IntPoly((1.0 + 0j,))
    roots = find_roots(P, tol=tol)
    factors: list = []
    if minimal:
        for orbit in cluster_orbits(roots, q, tol=tol).orbits:
            if orbit.is_zero:
                k0 = orbit.members[0][1]
                factors.extend([0j] * (q * -(-k0 // q) - k0))
                continue
            m = orbit.max_multiplicity
            y0 = complex(orbit.representative)
            for j, k in orbit.members:
                factors.extend([y0 * root_of_unity(q, j)] * (m - k))
        leading = 1.0 + 0j
    else:
        for r, k in roots.roots:
            r = complex(r)
            for _ in range(k):
                factors.extend(r * root_of_unity(q, j) for j in range(1, q))
        leading = complex(_naive_scale(P, q))
    return IntPoly.from_roots(factors, leading=leading) if factors else IntPoly((leading,))


def _cleanup(product: IntPoly, q: int):
    """Split a Y-polynomial into its X-part and the defect on other powers."""
    asc = product.ascending
    defect = max((abs(c) for i, c in enumerate(asc) if i % q), default=0.0)
    return IntPoly.from_ascending(asc[::q]), float(defect)


# ---------------------------------------------------------------------------
# operator coefficients
# ---------------------------------------------------------------------------

def expand_to_operator_coeffs(res: ConjugateResult, which: str = "p_hat") -> list:
    """Expanded ``(coeff, order)`` list, descending order, zero terms omitted.

    ``which`` selects ``p_hat`` (orders are rational) or ``reduced``
    (integer orders).  A constant polynomial 1 gives ``[(1, 0)]``.
    """
    if which == "p_hat":
        return [(c, e) for c, e in res.p_hat.terms]
    if which == "reduced":
        d = res.reduced.degree
        return [(c, Fraction(d - i)) for i, c in enumerate(res.reduced.coeffs) if c != 0]
    raise ValueError(f"which must be 'p_hat' or 'reduced', not {which!r}")


def orbit_summary(p: GenPoly, tol: float = DEFAULT_CLUSTER_TOL) -> list:
    """Roots of ``p`` in ``Y = X^{1/q}`` grouped into orbits (diagnostics)."""
    q = common_denominator(p)
    roots = find_roots(substitute_down(p, q), tol=tol)
    return list(cluster_orbits(roots, q, tol=tol).orbits)


def integrality_defect_of(p: GenPoly, p_hat: GenPoly) -> float:
    """Largest coefficient of ``p * p_hat`` on a non-integer exponent."""
    prod = p * p_hat
    vals = [abs(complex(c)) for c, e in prod.terms if e.denominator != 1]
    return float(np.max(vals)) if vals else 0.0
