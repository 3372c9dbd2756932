"""End-to-end solution of linear fractional integral equations ``T x = w``.

``T = sum c_i I^{r_i}`` corresponds to the generalized polynomial
``sum c_i X^{r_i}``; composition of operators is multiplication of
polynomials.  A conjugate ``T_hat`` makes ``R = T T_hat`` an integer-order
operator.  ``R`` always factors as ``I^m R'`` where ``R'`` has an identity
term, so every equation ends up as a second-kind integer-order equation:

* computing method: solve ``R y = w`` and return ``x = T_hat y``;
* checking method: solve ``R v = T_hat w`` and check ``v`` in ``T x = w``.

Both methods finish with the residual ``sup |T x - w|`` over the grid
nodes after the base point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .conjugate import ConjugateResult, conjugate
from .errors import NoSolution, ResidualAboveTolerance, SingularSolution, ZeroPolynomial
from .exact import is_exact, normalize
from .exppoly import ExpPoly
from .genpoly import GenPoly, make_genpoly
from .oie_solver import IntOrderEquation, sample, solve_closed, solve_volterra
from .operators import FracOperator, GridFunction, apply_operator, grid_derivative

ROUNDOFF_FLOOR = 1e-11

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SolveReport",
    "type": "object",
    "required": ["method", "accepted", "residual_sup", "grid_n", "t_hat",
                 "reduced_coeffs", "solution"],
    "properties": {
        "method": {"enum": ["checking", "computing"]},
        "accepted": {"type": "boolean"},
        "residual_sup": {"type": "number", "minimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "grid_n": {"type": "integer", "minimum": 1},
        "t_hat": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [
                {"type": "number"}, {"type": "number"},
                {"type": "integer"}, {"type": "integer", "minimum": 1}],
                "minItems": 4, "maxItems": 4},
        },
        "reduced_coeffs": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "number"}, {"type": "number"}],
                      "minItems": 2, "maxItems": 2},
        },
        "solution": {
            "type": "object",
            "properties": {"closed_form": {"type": "string"}, "csv_path": {"type": "string"}},
            "additionalProperties": False,
        },
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}


@dataclass(frozen=True)
class Equation:
    """``T x = rhs`` on ``[a, b]`` with ``T.base = a``."""

    T: FracOperator
    rhs: Union[ExpPoly, GridFunction]
    interval: tuple = (0.0, 1.0)

    def __post_init__(self):
        a, b = (float(v) for v in self.interval)
        if not (math.isfinite(a) and math.isfinite(b) and b > a):
            raise ValueError("interval must be finite with b > a")
        if not math.isclose(self.T.base, a, abs_tol=1e-12):
            raise ValueError(f"operator base {self.T.base} differs from interval start {a}")
        if isinstance(self.rhs, GridFunction):
            if not (math.isclose(self.rhs.a, a, abs_tol=1e-12)
                    and math.isclose(self.rhs.b, b, rel_tol=1e-12, abs_tol=1e-12)):
                raise ValueError("grid right-hand side does not cover the interval")
        object.__setattr__(self, "interval", (a, b))

    @property
    def a(self) -> float:
        return self.interval[0]

    @property
    def b(self) -> float:
        return self.interval[1]


@dataclass(frozen=True)
class SolveConfig:
    n: int = 1024
    tol: float = 1e-3
    method: str = "computing"
    minimal: bool = True
    auto_tol: bool = True  # widen tol to 10x the estimated quadrature error

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("grid needs n >= 2")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.method not in ("checking", "computing"):
            raise ValueError("method must be 'checking' or 'computing'")


@dataclass
class Reduction:
    t_hat: FracOperator
    reduced_coeffs: tuple  # R = T T_hat, descending integer orders deg..0
    strip: int  # R = I^strip R'
    conjugate: ConjugateResult

    @property
    def reduced_prime(self) -> tuple:
        """Coefficients of ``R'`` (identity term last, nonzero)."""
        return self.reduced_coeffs[: len(self.reduced_coeffs) - self.strip]


@dataclass
class SolveReport:
    method: str
    solution: GridFunction
    t_hat: FracOperator
    reduced_coeffs: tuple
    reduced_equation: Optional[IntOrderEquation]
    residual_sup: float
    tol: float
    grid_n: int
    accepted: bool
    closed_form: Optional[ExpPoly] = None  # y with x = T_hat y (computing method)
    diagnostics: list = field(default_factory=list)
    csv_path: Optional[str] = None

    def closed_form_text(self) -> Optional[str]:
        if self.closed_form is None:
            return None
        from .eqparser import format_operator
        if self.t_hat.terms == ((1, 0),):
            return f"x(t) = {self.closed_form}"
        return f"x = {format_operator(self.t_hat, 'y')}, y(t) = {self.closed_form}"

    def to_dict(self) -> dict:
        sol = {}
        text = self.closed_form_text()
        if text is not None:
            sol["closed_form"] = text
        if self.csv_path is not None:
            sol["csv_path"] = self.csv_path
        return {
            "method": self.method,
            "accepted": bool(self.accepted),
            "residual_sup": float(self.residual_sup),
            "tol": float(self.tol),
            "grid_n": int(self.grid_n),
            "t_hat": [[complex(c).real, complex(c).imag, r.numerator, r.denominator]
                      for c, r in self.t_hat.terms],
            "reduced_coeffs": [[complex(c).real, complex(c).imag] for c in self.reduced_coeffs],
            "solution": sol,
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# operator <-> polynomial
# ---------------------------------------------------------------------------

def operator_to_genpoly(T: FracOperator) -> GenPoly:
    return make_genpoly(list(T.terms))


def genpoly_to_operator(p: GenPoly, base: float = 0.0) -> FracOperator:
    return FracOperator(base, tuple(p.terms))


def compose(S: FracOperator, T: FracOperator) -> FracOperator:
    """``S o T`` (the operators commute)."""
    if not math.isclose(S.base, T.base, abs_tol=1e-12):
        raise ValueError("operators have different base points")
    return genpoly_to_operator(operator_to_genpoly(S) * operator_to_genpoly(T), S.base)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def reduce(eq_or_T, minimal: bool = True) -> Reduction:
    """Conjugate operator and the integer-order product ``R = T T_hat``."""
    T = eq_or_T.T if isinstance(eq_or_T, Equation) else eq_or_T
    if T.is_zero:
        raise ZeroPolynomial("the zero operator cannot be reduced")
    res = conjugate(operator_to_genpoly(T), minimal=minimal)
    t_hat = genpoly_to_operator(res.p_hat, T.base)
    coeffs = tuple(res.reduced.coeffs)
    strip = res.reduced.lowest_degree()
    return Reduction(t_hat=t_hat, reduced_coeffs=coeffs, strip=strip, conjugate=res)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _grid(eq: Equation, n: int):
    return (eq.a, eq.b, n)


def _rhs_grid(eq: Equation, n: int) -> GridFunction:
    if isinstance(eq.rhs, GridFunction):
        return eq.rhs
    return sample(eq.rhs, _grid(eq, n))


def _check_solvable(eq: Equation, red: Reduction) -> list:
    """Range conditions on an ExpPoly rhs; returns diagnostics."""
    w = eq.rhs
    alpha_l = eq.T.lowest_order
    a = _exact_base(eq.a)
    m = red.strip
    derivs = w.derivatives_at(a, m)
    scale = max([1.0] + [abs(complex(v)) for v in derivs])
    for k, v in enumerate(derivs):
        nonzero = v != 0 if is_exact(v) else abs(v) > 1e-12 * scale
        if not nonzero:
            continue
        if k + 1 <= alpha_l:
            raise NoSolution(
                f"no integrable solution: the right-hand side has nonzero derivative of "
                f"order {k} at the base point, but every I^{alpha_l} image vanishes there")
        raise SingularSolution(
            f"the solution behaves like (t - a)^({k} - {alpha_l}) near the base point and "
            f"cannot be sampled on a grid that includes it")
    return []


def _exact_base(a: float):
    fr = Fraction(a).limit_denominator(10**6)
    return normalize(fr) if float(fr) == a else a


def _singular_orders(op: FracOperator) -> tuple:
    return tuple(float(r) for _, r in op.terms if r.denominator != 1)


def _closed_form_apply(op: FracOperator, y: ExpPoly, eq: Equation, n: int) -> GridFunction:
    t = np.linspace(eq.a, eq.b, n + 1)
    total = np.zeros(n + 1, dtype=complex)
    for c, r in op.terms:
        total = total + complex(c) * y.frac_integral_samples(r, eq.a, t)
    return GridFunction(eq.a, eq.b, n, _maybe_real(total, op, y), _singular_orders(op))


def _maybe_real(vals: np.ndarray, op: FracOperator, rhs) -> np.ndarray:
    real_op = all(complex(c).imag == 0 for c, _ in op.terms)
    if isinstance(rhs, ExpPoly):
        real_rhs = all(complex(lam).imag == 0 and all(complex(c).imag == 0 for c in p)
                       for lam, p in rhs.terms)
    else:
        real_rhs = not np.iscomplexobj(rhs.values)
    return vals.real if real_op and real_rhs else vals


def residual(eq: Equation, x: GridFunction) -> float:
    """``sup |T x - w|`` over the grid nodes after the base point."""
    w = _rhs_grid(eq, x.n)
    r = apply_operator(eq.T, x).values - w.values
    return float(np.max(np.abs(r[1:]))) if x.n >= 1 else 0.0


def quadrature_error_estimate(eq: Equation, x: GridFunction) -> float:
    """Richardson estimate of the quadrature error in ``T x`` at this grid."""
    if x.n % 2 or x.n < 8:
        return 0.0
    fine = apply_operator(eq.T, x).values[::2]
    half = GridFunction(x.a, x.b, x.n // 2, x.values[::2], x.singular)
    coarse = apply_operator(eq.T, half).values
    return float(np.max(np.abs(fine[1:] - coarse[1:]))) / 3.0


def _finish(eq: Equation, cfg: SolveConfig, method: str, x: GridFunction, red: Reduction,
            reduced_eq, closed, diagnostics) -> SolveReport:
    res = residual(eq, x)
    tol = cfg.tol
    if cfg.auto_tol:
        est = quadrature_error_estimate(eq, x)
        if 10 * est > tol:
            diagnostics.append(f"tolerance widened to 10x estimated quadrature error {est:.3g}")
            tol = 10 * est
    report = SolveReport(method=method, solution=x, t_hat=red.t_hat,
                         reduced_coeffs=red.reduced_coeffs, reduced_equation=reduced_eq,
                         residual_sup=res, tol=tol, grid_n=x.n, accepted=res <= tol,
                         closed_form=closed, diagnostics=diagnostics)
    if not report.accepted:
        err = ResidualAboveTolerance(
            f"residual {res:.3e} exceeds tolerance {tol:.3e}: no solution in L^1", res, tol)
        err.report = report
        raise err
    return report


# ---------------------------------------------------------------------------
# methods
# ---------------------------------------------------------------------------

def solve_computing(eq: Equation, cfg: SolveConfig = SolveConfig()) -> SolveReport:
    """Solve ``R y = w`` and return ``x = T_hat y``."""
    red = reduce(eq, cfg.minimal)
    m = red.strip
    diagnostics: list = []
    if isinstance(eq.rhs, ExpPoly):
        diagnostics += _check_solvable(eq, red)
        reduced_eq = IntOrderEquation(red.reduced_prime, eq.a, eq.rhs.derivative(m))
        y = solve_closed(reduced_eq)
        x = _closed_form_apply(red.t_hat, y, eq, cfg.n)
        return _finish(eq, cfg, "computing", x, red, reduced_eq, y, diagnostics)
    w = eq.rhs
    _check_grid_start(eq, w)
    if m:
        diagnostics.append(f"derivative of order {m} of the grid right-hand side taken numerically")
    g = grid_derivative(w, m) if m else w
    reduced_eq = IntOrderEquation(red.reduced_prime, eq.a, g)
    y = solve_volterra(reduced_eq)
    x = apply_operator(red.t_hat, y)
    return _finish(eq, cfg, "computing", x, red, reduced_eq, None, diagnostics)


def solve_checking(eq: Equation, cfg: SolveConfig = SolveConfig()) -> SolveReport:
    """Solve ``R v = T_hat w`` and verify ``v`` in the original equation."""
    red = reduce(eq, cfg.minimal)
    m = red.strip
    diagnostics: list = []
    if isinstance(eq.rhs, ExpPoly):
        diagnostics += _check_solvable(eq, red)
        # T_hat w = I^m T_hat D^m w because w^(k)(a) = 0 for k < m
        g = _closed_form_apply(red.t_hat, eq.rhs.derivative(m), eq, cfg.n)
    else:
        w = eq.rhs
        _check_grid_start(eq, w)
        g = apply_operator(red.t_hat, w)
        if m:
            diagnostics.append(f"derivative of order {m} of T_hat w taken numerically")
            g = grid_derivative(g, m)
    reduced_eq = IntOrderEquation(red.reduced_prime, eq.a, g)
    v = solve_volterra(reduced_eq)
    return _finish(eq, cfg, "checking", v, red, reduced_eq, None, diagnostics)


def _check_grid_start(eq: Equation, w: GridFunction):
    if eq.T.lowest_order >= 1:
        scale = max(1.0, w.sup_norm())
        if abs(w.values[0]) > 1e-6 * scale:
            raise NoSolution("no integrable solution: the right-hand side must vanish at the "
                             "base point when every term has order >= 1")


def solve(eq: Equation, cfg: SolveConfig = SolveConfig()) -> SolveReport:
    if cfg.method == "checking":
        return solve_checking(eq, cfg)
    return solve_computing(eq, cfg)


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    residual_sup: float
    observed_order: Optional[float]  # None for the first row or when saturated
    saturated: bool = False


def convergence_study(eq: Equation, n_list, cfg: SolveConfig = SolveConfig()) -> list:
    """Residual at each grid size and the observed order between neighbours.

    Residuals at round-off level make the ratio meaningless; such rows are
    flagged ``saturated`` instead of reporting an order.
    """
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly increasing")
    rows = []
    prev = None
    for n in n_list:
        c = replace(cfg, n=n, auto_tol=False, tol=float("inf"))
        rep = solve(eq, c)
        res = rep.residual_sup
        scale = max(1.0, _rhs_grid(eq, n).sup_norm())
        saturated = res <= ROUNDOFF_FLOOR * scale
        order = None
        if prev is not None and not saturated and prev[1] > ROUNDOFF_FLOOR * scale:
            order = math.log(prev[1] / res) / math.log(n / prev[0]) if res > 0 else None
        rows.append(ConvergenceRow(n, res, order, saturated))
        prev = (n, res)
    return rows


# ---------------------------------------------------------------------------
# verification of a supplied solution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    residual_sup: float
    tol: float
    quadrature_estimate: float
    accepted: bool

    def to_dict(self) -> dict:
        return {"residual_sup": float(self.residual_sup), "tol": float(self.tol),
                "quadrature_estimate": float(self.quadrature_estimate),
                "accepted": bool(self.accepted)}


def verify(eq: Equation, x: GridFunction, cfg: SolveConfig = SolveConfig()) -> VerifyReport:
    """Residual of externally supplied samples ``x`` in ``T x = w``.

    Samples read from a file carry no information about their behaviour at
    the base point.  For a smooth right-hand side the solution has the
    non-integer powers of the conjugate operator, so those are assumed.
    """
    if not x.singular and isinstance(eq.rhs, ExpPoly):
        orders = _singular_orders(reduce(eq, cfg.minimal).t_hat)
        x = GridFunction(x.a, x.b, x.n, x.values, orders)
    if not (math.isclose(x.a, eq.a, abs_tol=1e-12) and math.isclose(x.b, eq.b, abs_tol=1e-12)):
        raise ValueError(f"solution grid [{x.a}, {x.b}] does not match the interval [{eq.a}, {eq.b}]")
    res = residual(eq, x)
    est = quadrature_error_estimate(eq, x)
    tol = max(cfg.tol, 10 * est) if cfg.auto_tol else cfg.tol
    return VerifyReport(res, tol, est, res <= tol)
