"""
Mittag-Leffler function and fractional integrals of exponentials
================================================================

``I^alpha e^{lam t} = t^alpha E_{1, 1+alpha}(lam t)`` links the quadrature
on a grid to a special-function value.  This script compares the two and
shows where the series evaluation of ``E_{alpha, beta}`` needs extra
precision.

Run with ``python3 notebooks/03_special_functions.py``.
"""

import math
from fractions import Fraction as F

import numpy as np

from fracreduce import GridFunction, frac_integral, mittag_leffler
from fracreduce.errors import DomainError
from fracreduce.operators import frac_integral_exp_closed

print("E_{1,1}(1)    =", mittag_leffler(1, 1, 1), " e =", math.e)
print("E_{2,1}(-4)   =", mittag_leffler(2, 1, -4.0), " cos 2 =", math.cos(2))
print("E_{1/2,1}(-3) =", mittag_leffler(0.5, 1, -3.0), " e^9 erfc 3 =", math.exp(9) * math.erfc(3))

# Large negative arguments make the series terms grow far beyond the
# result before they cancel.  Such values go through extended precision, and
# hopeless cases raise DomainError instead of returning garbage.
print("E_{1/2,1}(-20) =", mittag_leffler(0.5, 1, -20.0))
try:
    mittag_leffler(0.25, 1, -8.0)
except DomainError as exc:
    print("E_{1/4,1}(-8): DomainError:", exc)
print()

# Grid quadrature against the closed form for I^{1/2} e^{t/16}.
exact = frac_integral_exp_closed(F(1, 2), F(1, 16), 1.0).real
print("%8s %14s" % ("n", "error at t=1"))
for n in (64, 256, 1024, 4096):
    f = GridFunction.from_function(lambda t: np.exp(t / 16), 0.0, 1.0, n)
    approx = frac_integral(f, F(1, 2)).values[-1]
    print("%8d %14.3e" % (n, abs(approx - exact)))
