import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracreduce.exppoly import ExpPoly, format_exppoly

# Frozen from tests/oracles.rl_integral_quad (singularity-free mpmath quadrature, 30 digits).
ORACLES = [
    # (function, order, base, t, value)
    (ExpPoly.exp(1), F(1, 2), 0, 1.0, 2.290698252303238),
    (ExpPoly.constant(1), F(1, 2), 0, 0.7, 0.9440697438826295),
    (ExpPoly.exp(F(1, 16)), F(1, 2), 0, 1.0, 1.1765916447474507),
    (ExpPoly.monomial(1, -1), F(1, 2), 0, 1.0, 0.3465469752143343),
    (ExpPoly.exp(1j) + ExpPoly.exp(-1j) * (-1), F(3, 2), 0, 0.8,
     2j * (0.49990259701146095 + 0.165370700936675j).imag),
    (ExpPoly.exp(1j), F(3, 2), 0, 0.8, 0.49990259701146095 + 0.165370700936675j),
]


def test_constructors_and_accessors():
    e = ExpPoly.monomial(2, F(1, 3), F(5))
    assert e.terms == ((F(1, 3), (0, 0, 5)),)
    assert e.rates == (F(1, 3),)
    assert e.poly(F(1, 3)) == (0, 0, 5)
    assert e.poly(7) == ()
    assert e.exact
    assert ExpPoly.zero().is_zero()


def test_merging_and_cancellation():
    e = ExpPoly(((1, (1, 2)), (1, (-1, -2)), (0, (3,))))
    assert e == ExpPoly.constant(3)


def test_arithmetic_exact():
    a = ExpPoly.exp(1) + ExpPoly.constant(2)
    b = ExpPoly.exp(-1)
    assert a * b == ExpPoly.constant(1) + ExpPoly.exp(-1, 2)
    assert (a - a).is_zero()
    assert a**2 == ExpPoly.exp(2) + ExpPoly.exp(1, 4) + ExpPoly.constant(4)
    assert 3 - a == ExpPoly.constant(1) - ExpPoly.exp(1)


def test_float_contaminates():
    e = ExpPoly.exp(1) * 0.5
    assert not e.exact
    assert e(np.array([0.0]))[0] == pytest.approx(0.5)


def test_derivative_resonant_term():
    e = ExpPoly.monomial(1, 1)  # t e^t
    assert e.derivative() == ExpPoly(((1, (1, 1)),))
    assert e.derivative(2) == ExpPoly(((1, (2, 1)),))


def test_exact_point_values():
    e = ExpPoly(((0, (F(1, 2), 3)),))
    assert e.at(F(2, 3)) == F(5, 2)
    assert e.derivatives_at(0, 3) == [F(1, 2), 3, 0]
    assert ExpPoly.exp(1).at(1) == pytest.approx(math.e)


def test_taylor_shift_preserves_values():
    e = ExpPoly(((F(1, 2), (1, -2, 3)), (-1j, (2,))))
    shifted = e.taylor_shift(0.75)
    s = np.linspace(0, 2, 7)
    assert np.allclose(shifted(s), e(s + 0.75), atol=1e-13)


@pytest.mark.parametrize("f,nu,a,t,value", ORACLES)
def test_frac_integral_samples_against_quadrature(f, nu, a, t, value):
    assert f.frac_integral_samples(nu, a, [t])[0] == pytest.approx(value, rel=1e-12, abs=1e-14)


def test_frac_integral_samples_with_shifted_base():
    # I^{1/4} from base 1 of (s-1)^2 e^{2(s-1)} at t = 2
    f = ExpPoly(((2, (1, -2, 1)),)) * cmath.exp(-2)
    assert f.frac_integral_samples(F(1, 4), 1, [2.0])[0] == pytest.approx(5.108267677637277, rel=1e-12)
    with pytest.raises(ValueError):
        f.frac_integral_samples(F(1, 4), 1, [0.5])


def test_frac_integral_samples_order_zero_and_one():
    f = ExpPoly.exp(1)
    t = np.array([0.0, 0.5, 1.0])
    assert np.allclose(f.frac_integral_samples(0, 0, t), np.exp(t))
    assert np.allclose(f.frac_integral_samples(1, 0, t), np.exp(t) - 1, atol=1e-15)


def test_text_examples():
    e = ExpPoly(((F(1, 16), (F(71, 9734400), F(1, 3993600))), (1, (F(-1, 18000),))))
    assert format_exppoly(e) == "(71/9734400 + (1/3993600) t) exp(t/16) - (1/18000) exp(t)"
    assert ExpPoly.parse(str(e)) == e
    assert str(ExpPoly.zero()) == "0"
    assert str(ExpPoly.monomial(2, -3)) == "t^2 exp(-3 t)"


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
exppolys = st.lists(
    st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=4),
              st.lists(rationals, min_size=1, max_size=3).map(tuple)),
    max_size=3,
).map(lambda terms: ExpPoly(tuple(terms)))


@settings(max_examples=60, deadline=None)
@given(exppolys)
def test_text_round_trip(e):
    assert ExpPoly.parse(format_exppoly(e)) == e


@settings(max_examples=40, deadline=None)
@given(exppolys, exppolys)
def test_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@settings(max_examples=40, deadline=None)
@given(exppolys, exppolys)
def test_evaluation_is_ring_homomorphism(a, b):
    t = np.array([0.0, 0.4, 1.1])
    assert np.allclose((a * b)(t), a(t) * b(t), rtol=1e-12, atol=1e-12)
    assert np.allclose((a + b)(t), a(t) + b(t), rtol=1e-12, atol=1e-12)
