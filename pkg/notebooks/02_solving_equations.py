"""
Solving fractional integral equations
=====================================

The equation ``T x = w`` is turned into ``T T_hat y = w`` with an
integer-order operator on the left.  For an exponential-polynomial right
side that equation has a closed-form solution, and ``x = T_hat y``.  The
checking method instead solves ``T_hat T v = T_hat w`` by time stepping and
checks ``v`` in the original equation.

Run with ``python3 notebooks/02_solving_equations.py``.
"""

from fractions import Fraction as F

import numpy as np

from fracreduce import (
    Equation,
    ExpPoly,
    FracOperator,
    GridFunction,
    SolveConfig,
    bind,
    convergence_study,
    format_operator,
    parse,
    solve,
)

text = "I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)"
eq = bind(parse(text))

computing = solve(eq, SolveConfig(n=1024))
checking = solve(eq, SolveConfig(n=1024, method="checking"))
print("T_hat       =", format_operator(computing.t_hat))
print("closed form:", computing.closed_form_text())
print("residual (computing) = %.3e" % computing.residual_sup)
print("residual (checking)  = %.3e" % checking.residual_sup)
print("max |x_computing - x_checking| = %.3e"
      % np.max(np.abs(computing.solution.values - checking.solution.values)))
print()

# The residual of the sampled solution falls at close to second order.
print("%8s %14s %8s" % ("n", "residual", "order"))
for row in convergence_study(eq, [128, 256, 512, 1024, 2048]):
    order = "-" if row.observed_order is None else "%.3f" % row.observed_order
    print("%8d %14.6e %8s" % (row.n, row.residual_sup, order))
print()

# Abel equation with sampled data: manufacture f = I^{1/2} g and recover g.
n = 1024
g = ExpPoly.monomial(1, -1)  # t e^{-t}
t = np.linspace(0.0, 1.0, n + 1)
f = GridFunction(0.0, 1.0, n, g.frac_integral_samples(F(1, 2), 0.0, t).real, (0.5, 1.5))
abel = Equation(FracOperator(0.0, ((1, F(1, 2)),)), f, (0.0, 1.0))
for method in ("computing", "checking"):
    rep = solve(abel, SolveConfig(n=n, method=method))
    err = np.max(np.abs(rep.solution.values - g(t).real))
    print("Abel, %-9s max error %.2e" % (method, err))
print()

# Equations outside the solvable class are reported instead of returning noise.
for bad in ["I^{1} x = 1", "I^{1/2} x = exp(t)"]:
    try:
        solve(bind(parse(bad)))
    except Exception as exc:
        print("%-22s -> %s: %s" % (bad, type(exc).__name__, exc))
