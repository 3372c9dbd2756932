"""Polynomial roots with multiplicities, and their orbits under roots of unity.

Exact polynomials are split with Yun's squarefree decomposition first, so
multiplicities are exact; each squarefree factor is then solved numerically
(simple roots only) and every root is offered a rational / Gaussian-rational
reconstruction that is kept only if it verifies exactly.

Floating polynomials are solved as a whole with the Aberth-Ehrlich
simultaneous iteration (no deflation) and multiple roots are recovered by
clustering the approximations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonConvergence, ZeroPolynomial
from .exact import ExactComplex, is_exact, normalize
from .genpoly import IntPoly, squarefree_decomposition

DEFAULT_CLUSTER_TOL = 1e-7
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootSet:
    """Distinct roots with multiplicities; multiplicities sum to the degree."""

    roots: tuple  # ((value, multiplicity), ...)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.roots)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v, _ in self.roots)

    def values(self) -> list:
        return [v for v, _ in self.roots]

    def as_dict(self) -> dict:
        return {v: k for v, k in self.roots}

    def expanded(self) -> list:
        return [v for v, k in self.roots for _ in range(k)]


@dataclass(frozen=True)
class Orbit:
    """Roots ``representative * xi**j``; ``members[j] = (j, multiplicity)``."""

    representative: object
    members: tuple

    @property
    def max_multiplicity(self) -> int:
        return max(k for _, k in self.members)

    @property
    def is_zero(self) -> bool:
        return self.representative == 0


@dataclass(frozen=True)
class OrbitSet:
    q: int
    orbits: tuple


def root_of_unity(q: int, j: int = 1, exact: bool = False):
    """``xi**j`` for the principal primitive q-th root ``xi = exp(2 pi i / q)``.

    Exact values exist only for q in {1, 2, 4}; those are also returned
    without rounding noise in floating mode.
    """
    j %= q
    if q in (1, 2, 4):
        quarter = (j * (4 // q)) % 4
        value = (Fraction(1), ExactComplex(0, 1), Fraction(-1), ExactComplex(0, -1))[quarter]
        return value if exact else complex(value)
    if exact:
        raise ValueError(f"no exact primitive {q}-th root of unity")
    return cmath.exp(2j * math.pi * j / q)


# ---------------------------------------------------------------------------
# numeric core
# ---------------------------------------------------------------------------

def _eval_bound(coeffs_abs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Rounding-error bound for Horner evaluation at ``z``."""
    az = np.abs(z)
    acc = np.zeros_like(az)
    for c in coeffs_abs:
        acc = acc * az + c
    return acc


def aberth(coeffs, max_iter: int = 1000) -> np.ndarray:
    """All roots of a polynomial (descending complex coefficients).

    Aberth-Ehrlich iteration on the full polynomial.  A root approximation is
    frozen once ``|p(z)|`` falls to the rounding-error level of the Horner
    evaluation, which is the best any method can do in double precision.
    """
    a = np.asarray(coeffs, dtype=complex)
    if a.size == 0 or a[0] == 0:
        raise ZeroPolynomial("leading coefficient must be nonzero")
    n = a.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    a = a / a[0]
    if n == 1:
        return np.array([-a[1]])
    da = a[:-1] * np.arange(n, 0, -1)
    absa = np.abs(a)
    # Fujiwara-type bound for the starting circle
    radius = 2 * max(abs(a[k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = max(radius, 1e-3)
    lower = _lower_root_bound(a)
    r0 = max(min(radius / 2, 1.0), lower)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = r0 * np.exp(1j * angles) - a[1] / n
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polyval(a, z)
        bound = 8 * n * _EPS * _eval_bound(absa, z)
        active &= ~(np.abs(pz) <= bound)
        if not active.any():
            return z
        dpz = np.polyval(da, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        w[~active] = 0.0
        z = z - w
        if not np.all(np.isfinite(z)):
            raise NonConvergence("root iteration diverged")
        if np.all(np.abs(w[active]) <= 4 * _EPS * np.maximum(1.0, np.abs(z[active]))):
            return z
    raise NonConvergence(f"root finder did not converge in {max_iter} iterations")


def _lower_root_bound(a: np.ndarray) -> float:
    nz = np.flatnonzero(a)
    last = nz[-1]
    if last == 0:
        return 0.0
    # roots of the reversed polynomial bound |z| from below
    rev = a[: last + 1][::-1] / a[last]
    m = rev.size - 1
    return 0.5 / max(abs(rev[k]) ** (1.0 / k) for k in range(1, m + 1))


def _newton_polish(coeffs: np.ndarray, z: complex, steps: int = 3) -> complex:
    d = np.polyder(coeffs)
    for _ in range(steps):
        dz = np.polyval(d, z)
        if dz == 0:
            break
        step = np.polyval(coeffs, z) / dz
        if not np.isfinite(step):
            break
        z = z - step
    return complex(z)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def find_roots(P: IntPoly, tol: float = DEFAULT_CLUSTER_TOL) -> RootSet:
    """All complex roots of ``P`` with multiplicities.

    Roots returned as exact scalars (Fraction / ExactComplex) were verified by
    exact evaluation; the others are complex floats.
    """
    if P.is_zero():
        raise ZeroPolynomial("cannot find roots of the zero polynomial")
    if P.degree < 1:
        raise ZeroPolynomial("constant polynomial has no roots")
    if P.exact:
        return _find_roots_exact(P)
    return _find_roots_float(P, tol)


def _find_roots_exact(P: IntPoly) -> RootSet:
    roots = []
    k0 = P.lowest_degree()
    if k0:
        roots.append((Fraction(0), k0))
        P = P // IntPoly.monomial(k0)
    for factor, mult in squarefree_decomposition(P):
        for r in _solve_squarefree(factor):
            roots.append((r, mult))
    return RootSet(tuple(roots))


def _solve_squarefree(S: IntPoly) -> list:
    if S.degree == 1:
        return [normalize(-S.coeffs[1] / S.coeffs[0])]
    found = []
    rest = S
    # exact linear factors first: deflating exact rational roots is lossless
    approx = aberth(S.to_numpy())
    coeffs = S.to_numpy()
    numeric = []
    for z in approx:
        z = _newton_polish(coeffs / coeffs[0], z)
        cand = _reconstruct(z, S)
        if cand is not None and rest.degree >= 1 and rest(cand) == 0:
            found.append(cand)
            rest = rest // IntPoly((1, -cand))
        else:
            numeric.append(z)
    if rest.degree == 1:
        return found + [normalize(-rest.coeffs[1] / rest.coeffs[0])]
    if rest.degree >= 1 and len(numeric) != rest.degree:
        numeric = list(aberth(rest.to_numpy()))
    if rest.degree >= 1:
        rc = rest.to_numpy()
        numeric = [_newton_polish(rc / rc[0], z) for z in numeric]
    return found + numeric


def _reconstruct(z: complex, S: IntPoly):
    """Rational / Gaussian-rational candidate near ``z`` (not yet verified)."""
    limit = _denominator_limit(S)
    re = Fraction(z.real).limit_denominator(limit)
    im = Fraction(z.imag).limit_denominator(limit)
    scale = max(1.0, abs(z))
    if abs(z.imag) <= 1e-9 * scale:
        im = Fraction(0)
    cand = normalize(ExactComplex(re, im))
    if abs(complex(cand) - z) > 1e-6 * scale:
        return None
    return cand


def _denominator_limit(S: IntPoly) -> int:
    dens = 1
    for c in S.coeffs:
        for part in ((c.re, c.im) if isinstance(c, ExactComplex) else (c,)):
            dens = dens * part.denominator // math.gcd(dens, part.denominator)
    lead = S.leading * dens
    lead_abs = abs(complex(lead))
    return int(min(max(lead_abs, 1) * 4, 10**12))


def _find_roots_float(P: IntPoly, tol: float) -> RootSet:
    coeffs = P.to_numpy()
    z = aberth(coeffs)
    k0 = 0
    # exact zero roots of a floating polynomial are trailing zero coefficients
    while coeffs[-1 - k0] == 0:
        k0 += 1
    if k0:
        z = aberth(coeffs[: len(coeffs) - k0])
    clusters = _cluster(list(z), coeffs, tol)
    roots = [(c, k) for c, k in clusters]
    if k0:
        roots.insert(0, (0j, k0))
    return RootSet(tuple(roots))


def _cluster(z: list, coeffs: np.ndarray, tol: float) -> list:
    """Group approximations of multiple roots.

    Candidates are formed with a loose radius; a candidate group of size k is
    accepted when its centroid is, to rounding level, a zero of the first
    k-1 derivatives as well.  Rejected groups fall back to the tight
    ``tol`` radius.
    """
    n = len(z)
    loose = 1e-3
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= loose * max(1.0, abs(z[i]), abs(z[j])):
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(z[i])
    out = []
    for members in groups.values():
        if len(members) == 1:
            out.append((complex(members[0]), 1))
            continue
        accepted = _verify_multiple(members, coeffs)
        if accepted is not None:
            out.append((accepted, len(members)))
        else:
            out.extend(_tight_groups(members, tol))
    return out


def _verify_multiple(members: list, coeffs: np.ndarray):
    k = len(members)
    c = complex(np.mean(members))
    derivs = [coeffs]
    for _ in range(k - 1):
        derivs.append(np.polyder(derivs[-1]))
    # refine on the (k-1)-th derivative, where the root is simple
    c = _newton_polish(derivs[-1], c, steps=5)
    for j, d in enumerate(derivs[:-1]):
        bound = 8 * len(coeffs) * _EPS * _eval_bound(np.abs(d), np.array([c]))[0]
        if abs(np.polyval(d, c)) > 1e4 * bound * (1 + j):
            return None
    return c


def _tight_groups(members: list, tol: float) -> list:
    out = []
    for z in members:
        for idx, (c, k) in enumerate(out):
            if abs(z - c) <= tol * max(1.0, abs(c)):
                out[idx] = ((c * k + z) / (k + 1), k + 1)
                break
        else:
            out.append((complex(z), 1))
    return out


def cluster_orbits(R: RootSet, q: int, tol: float = DEFAULT_CLUSTER_TOL) -> OrbitSet:
    """Group roots whose ratio is a q-th root of unity.

    The root 0 forms an orbit on its own.  Each orbit lists all q phases
    ``j`` with the multiplicity of ``representative * xi**j`` (possibly 0).
    The representative is the member with the smallest argument in
    ``[0, 2 pi)``.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    groups: list = []
    zero = []
    for v, k in R.roots:
        if v == 0:
            zero.append((v, k))
            continue
        for g in groups:
            if _same_orbit(v, g[0][0], q, tol):
                g.append((v, k))
                break
        else:
            groups.append([(v, k)])
    orbits = []
    for (v, k) in zero:
        orbits.append(Orbit(v, ((0, k),)))
    for g in groups:
        rep = min((v for v, _ in g), key=lambda v: cmath.phase(complex(v)) % (2 * math.pi))
        mult = [0] * q
        for v, k in g:
            j = _phase_index(v, rep, q)
            mult[j] += k
        orbits.append(Orbit(rep, tuple((j, mult[j]) for j in range(q))))
    return OrbitSet(q, tuple(orbits))


def _same_orbit(u, v, q: int, tol: float) -> bool:
    if is_exact(u) and is_exact(v):
        return u ** q == v ** q
    ratio = complex(u) / complex(v)
    return abs(ratio ** q - 1) <= q * tol


def _phase_index(v, rep, q: int) -> int:
    if v == rep:
        return 0
    angle = cmath.phase(complex(v) / complex(rep)) % (2 * math.pi)
    return int(round(angle * q / (2 * math.pi))) % q
