"""
Conjugate operators and integer-order reduction
===============================================

A fractional integral operator ``T = sum c_i I^{r_i}`` with rational orders
corresponds to the generalized polynomial ``p(X) = sum c_i X^{r_i}``.
Multiplying ``p`` by a conjugate ``p_hat`` clears every fractional power,
so ``T_hat T`` is an ordinary integral operator of integer order.

Run with ``python3 notebooks/01_conjugate_reduction.py``.
"""

from fractions import Fraction as F

from fracreduce import X, conjugate_minimal, conjugate_naive, make_genpoly, parse_genpoly
from fracreduce.genpoly import format_genpoly, mul, substitute_down
from fracreduce.rootfind import cluster_orbits, find_roots

# The Abel operator I^{1/2} is its own conjugate: I^{1/2} I^{1/2} = I^{1}.
abel = conjugate_naive(X(F(1, 2)))
print("Abel:   p_hat =", format_genpoly(abel.p_hat), "  p * p_hat =", abel.reduced.to_text("X"))

# A three-term example with a half-integer power: rotating the half-integer
# terms gives the conjugate, and the product is a polynomial in X.
p = make_genpoly([(2, 2), (F(1, 3), F(3, 2)), (-5, 0)])
res = conjugate_naive(p)
print("p       =", format_genpoly(p))
print("p_hat   =", format_genpoly(res.p_hat))
print("product =", format_genpoly(mul(p, res.p_hat)))
print()

# Four fractional terms with common denominator q = 4.
p = parse_genpoly("X + 5 X^{3/4} + 2 X^{1/2} - 20 X^{1/4} - 24")
q = 4
P = substitute_down(p, q)
roots = find_roots(P)
print("p(X)           =", format_genpoly(p))
print("P(Y), Y=X^1/4  =", P.to_text("Y"))
print("roots of P     =", {str(k): v for k, v in roots.as_dict().items()})

# -2 and 2 differ by the fourth root of unity -1, so they share an orbit and
# contribute a single factor to the minimal conjugate.
for orbit in cluster_orbits(roots, q).orbits:
    print("orbit with representative", orbit.representative,
          "max multiplicity", orbit.max_multiplicity)

naive = conjugate_naive(p)
minimal = conjugate_minimal(p)
print()
print("naive   p * p_hat =", naive.reduced.to_text("X"), " degree", naive.reduced.degree)
print("minimal p * p_hat =", minimal.reduced.to_text("X"), " degree", minimal.reduced.degree)
print("minimal p_hat     =", format_genpoly(minimal.p_hat))

# Floating-point coefficients switch to numerical roots; the integrality
# defect measures how far the product is from an ordinary polynomial.
approx = conjugate_minimal(p.to_float())
print()
print("float mode integrality defect: %.2e" % approx.integrality_defect)
