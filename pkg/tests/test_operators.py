import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracreduce.errors import BaseMismatch, OrderOutOfRange
from fracreduce.operators import (
    FracOperator,
    GridFunction,
    apply_operator,
    frac_integral,
    frac_integral_exp_closed,
    gl_frac_derivative,
    grid_derivative,
    product_trapezoid_weights,
)

# Frozen from tests/oracles.rl_integral_quad (singularity-free mpmath quadrature, 30 digits).
I_HALF_EXP_AT_1 = 2.290698252303238  # I^{1/2} e^t at t = 1, also e * erf(1)
I_HALF_EXP16_AT_1 = 1.1765916447474507  # I^{1/2} e^{t/16} at t = 1
I_THREEQUARTER_SIN_AT_1 = 0.5636262574105666  # I^{3/4} sin t at t = 1


def grid(fn, n, a=0.0, b=1.0, singular=()):
    return GridFunction.from_function(fn, a, b, n, singular)


def test_constant_half_integral():
    out = frac_integral(grid(lambda t: 1.0, 256), F(1, 2))
    assert np.max(np.abs(out.values - 2 * np.sqrt(out.t / math.pi))) < 1e-13


def test_linear_first_integral_is_exact():
    out = frac_integral(grid(lambda t: t, 200), 1)
    assert np.max(np.abs(out.values - out.t**2 / 2)) < 1e-14


def test_exp_half_integral_matches_quadrature_oracle():
    out = frac_integral(grid(np.exp, 1024), F(1, 2))
    assert out.values[0] == 0
    assert abs(out.values[-1] - I_HALF_EXP_AT_1) < 1e-4


def test_sin_three_quarter_integral_matches_oracle():
    out = frac_integral(grid(np.sin, 1024), F(3, 4))
    assert abs(out.values[-1] - I_THREEQUARTER_SIN_AT_1) < 1e-6


def test_weights_stable_for_large_k():
    b, w0 = product_trapezoid_weights(0.5, 5000)
    k = np.arange(1, 5001, dtype=float)
    p = 1.5
    naive = (k + 1) ** p - 2 * k**p + (k - 1) ** p
    # the cancellation-free weights agree with the naive formula where it is
    # still accurate, and remain positive and smoothly decaying further out
    assert np.allclose(b[1:40], naive[:39], rtol=1e-12)
    assert np.all(b[1:] > 0) and np.all(np.diff(b[1:]) < 0)


def test_convergence_exp_half_against_closed_form():
    errs = []
    for n in (128, 256, 512):
        f = grid(np.exp, n)
        exact = np.exp(f.t) * np.array([math.erf(math.sqrt(t)) for t in f.t])
        errs.append(np.max(np.abs(frac_integral(f, F(1, 2)).values - exact)))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1.5


def test_singular_correction_recovers_accuracy():
    # f = t^{1/2}: I^{1/2} f = Gamma(3/2) t / Gamma(2)
    n = 256
    f = grid(np.sqrt, n, singular=(0.5,))
    exact = math.gamma(1.5) * f.t
    plain = frac_integral(f, F(1, 2), corrected=False)
    corrected = frac_integral(f, F(1, 2))
    assert np.max(np.abs(corrected.values - exact)) < 1e-12
    assert np.max(np.abs(plain.values - exact)) > 1e-5


def test_gl_derivative_inverts_half_integral():
    f = grid(lambda t: t, 1024)
    back = gl_frac_derivative(frac_integral(f, F(1, 2)), F(1, 2))
    assert np.max(np.abs(back.values - f.values)) <= 1e-2


def test_gl_derivative_of_sqrt():
    f = grid(np.sqrt, 2048)
    d = gl_frac_derivative(f, F(1, 2))
    assert np.max(np.abs(d.values[64:] - math.gamma(1.5))) < 5e-3


@pytest.mark.parametrize("alpha", [0, 1, F(3, 2)])
def test_gl_derivative_order_range(alpha):
    with pytest.raises(OrderOutOfRange):
        gl_frac_derivative(grid(np.sin, 32), alpha)


def test_frac_integral_rejects_nonpositive_order():
    with pytest.raises(OrderOutOfRange):
        frac_integral(grid(np.sin, 32), 0)


def test_grid_derivative():
    f = grid(np.sin, 512)
    assert np.max(np.abs(grid_derivative(f).values - np.cos(f.t))) < 1e-5
    err2 = np.abs(grid_derivative(f, 2).values + np.sin(f.t))
    # one-sided second differences at the two ends are first order
    assert np.max(err2[2:-2]) < 1e-5
    assert np.max(err2) < 5e-3


def test_apply_identity():
    f = grid(np.exp, 64)
    assert np.array_equal(apply_operator(FracOperator.identity(), f).values, f.values)


def test_apply_base_mismatch():
    with pytest.raises(BaseMismatch):
        apply_operator(FracOperator(1.0, ((1, F(1, 2)),)), grid(np.exp, 64))


def test_split_half_integrals_match_first_integral():
    f = grid(np.exp, 1024)
    two_halves = frac_integral(frac_integral(f, F(1, 2)), F(1, 2))
    one = apply_operator(FracOperator(0.0, ((1, 1),)), f)
    assert np.max(np.abs(two_halves.values - one.values)) < 1e-6


def test_frac_operator_normalizes_terms():
    T = FracOperator(0.0, ((1, F(1, 4)), (2, F(1)), (-1, F(1, 4)), (3, 0)))
    assert T.terms == ((2, F(1)), (3, F(0)))
    assert T.has_identity and T.lowest_order == 0
    with pytest.raises(OrderOutOfRange):
        FracOperator(0.0, ((1, F(-1, 2)),))
    assert str(T) == "2 I^{1} x + 3 x"


def test_closed_form_exp_integral():
    assert frac_integral_exp_closed(1, 1, 1.0) == pytest.approx(math.e - 1, rel=1e-15)
    assert frac_integral_exp_closed(F(1, 2), 0, 4.0) == pytest.approx(2.2567583341910251, rel=1e-15)
    assert frac_integral_exp_closed(F(1, 2), F(1, 16), 1.0).real == pytest.approx(I_HALF_EXP16_AT_1, rel=1e-14)
    g = frac_integral(grid(lambda t: np.exp(t / 16), 4096), F(1, 2))
    assert abs(g.values[-1] - frac_integral_exp_closed(F(1, 2), F(1, 16), 1.0)) < 1e-6


def test_csv_and_json_round_trip():
    f = grid(lambda t: np.exp(1j * t), 16, a=-1.0, b=2.0)
    for back in (GridFunction.from_csv(f.to_csv()), GridFunction.from_json(f.to_json())):
        assert (back.a, back.b, back.n) == (f.a, f.b, f.n)
        assert np.array_equal(back.values, f.values)
    assert f.to_csv().splitlines()[0] == "t,re,im"


def test_csv_rejects_bad_input():
    with pytest.raises(ValueError):
        GridFunction.from_csv("x,y\n0,1\n")
    with pytest.raises(ValueError):
        GridFunction.from_csv("t,re,im\n0,1,0\n0.3,1,0\n1,1,0\n")


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction(1.0, 0.0, 4, np.zeros(5))
    with pytest.raises(ValueError):
        GridFunction(0.0, 1.0, 4, np.zeros(4))
    with pytest.raises(ValueError):
        GridFunction(0.0, 1.0, 1, np.array([0.0, np.nan]))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

orders = st.sampled_from([F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1), F(3, 2)])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(-3, 3), orders), min_size=1, max_size=3),
       st.floats(-2, 2), st.integers(0, 2**31))
def test_apply_operator_is_linear(terms, c, seed):
    T = FracOperator(0.0, tuple((x, r) for x, r in terms))
    rng = np.random.default_rng(seed)
    f = GridFunction(0.0, 1.0, 64, rng.normal(size=65))
    g = GridFunction(0.0, 1.0, 64, rng.normal(size=65))
    lhs = apply_operator(T, f * c + g).values
    rhs = c * apply_operator(T, f).values + apply_operator(T, g).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=25, deadline=None)
@given(orders, st.integers(0, 2**31))
def test_kernel_positivity(alpha, seed):
    rng = np.random.default_rng(seed)
    f = GridFunction(0.0, 1.0, 128, rng.uniform(0, 1, size=129))
    assert np.all(frac_integral(f, alpha).values >= 0)
