"""Reduction of linear fractional integral equations with rational orders.

An operator ``T = sum c_i I^{r_i}`` of Riemann-Liouville integrals is
treated as a generalized polynomial ``sum c_i X^{r_i}``.  A conjugate
``T_hat`` turns ``T T_hat`` into an integer-order operator, so the
fractional equation ``T x = w`` can be solved through an ordinary integral
(or differential) equation.
"""

from .conjugate import ConjugateResult, conjugate, conjugate_minimal, conjugate_naive
from .eqparser import bind, format_operator, parse, to_text
from .exppoly import ExpPoly
from .genpoly import GenPoly, IntPoly, X, make_genpoly, parse_genpoly
from .oie_solver import IntOrderEquation, initial_conditions, solve_closed, solve_volterra
from .operators import (
    FracOperator,
    GridFunction,
    apply_operator,
    frac_integral,
    gl_frac_derivative,
)
from .pipeline import (
    Equation,
    SolveConfig,
    SolveReport,
    convergence_study,
    reduce,
    solve,
    solve_checking,
    solve_computing,
    verify,
)
from .rootfind import cluster_orbits, find_roots
from .special import gamma, mittag_leffler

__all__ = [
    "ConjugateResult", "Equation", "ExpPoly", "FracOperator", "GenPoly", "GridFunction",
    "IntOrderEquation", "IntPoly", "SolveConfig", "SolveReport", "X", "apply_operator",
    "bind", "cluster_orbits", "conjugate", "conjugate_minimal", "conjugate_naive",
    "convergence_study", "find_roots", "format_operator", "frac_integral", "gamma",
    "gl_frac_derivative", "initial_conditions", "make_genpoly", "mittag_leffler", "parse",
    "parse_genpoly", "reduce", "solve", "solve_checking", "solve_closed", "solve_computing",
    "solve_volterra", "to_text", "verify",
]
