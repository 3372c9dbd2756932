import cmath
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracreduce.errors import ZeroPolynomial
from fracreduce.exact import ExactComplex
from fracreduce.genpoly import IntPoly
from fracreduce.rootfind import RootSet, aberth, cluster_orbits, find_roots, root_of_unity


def test_monomial_root_zero():
    assert find_roots(IntPoly.monomial(4)).as_dict() == {0: 4}


def test_exact_roots_with_multiplicity():
    R = find_roots(IntPoly.from_roots([-2, -2, 2, -3]))
    assert R.exact
    assert R.as_dict() == {-2: 2, 2: 1, -3: 1}


def test_reduced_polynomial_roots():
    R = find_roots(IntPoly((1, -113, 2848, -20736)))
    assert R.as_dict() == {16: 2, 81: 1}


def test_exact_gaussian_rational_roots():
    i = ExactComplex(0, 1)
    R = find_roots(IntPoly.from_roots([i * 2, -i * 2, F(1, 3)]))
    assert R.exact
    assert set(R.as_dict()) == {ExactComplex(0, 2), ExactComplex(0, -2), F(1, 3)}


def test_irrational_roots_fall_back_to_float():
    R = find_roots(IntPoly((1, 0, -2)))
    assert not R.exact
    assert sorted(v.real for v in R.values()) == pytest.approx([-2**0.5, 2**0.5], abs=1e-12)


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        find_roots(IntPoly.zero())


def test_aberth_simple_roots():
    z = aberth(np.poly([1.0, 2.0, 3.0 + 1j]))
    assert sorted(z, key=lambda v: (v.real, v.imag)) == pytest.approx([1, 2, 3 + 1j], abs=1e-10)


def test_root_of_unity_exact_cases():
    assert root_of_unity(4, 1, exact=True) == ExactComplex(0, 1)
    assert root_of_unity(4, 2, exact=True) == -1
    assert root_of_unity(2, 1) == -1 + 0j
    assert root_of_unity(6, 1) == pytest.approx(cmath.exp(1j * cmath.pi / 3))
    with pytest.raises(ValueError):
        root_of_unity(3, 1, exact=True)


def test_orbit_of_two_and_minus_two():
    R = RootSet(((F(-2), 2), (F(2), 1)))
    orbits = cluster_orbits(R, 4).orbits
    assert len(orbits) == 1
    (o,) = orbits
    assert o.representative == 2
    assert dict(o.members)[0] == 1 and dict(o.members)[2] == 2
    assert o.max_multiplicity == 2


def test_unrelated_roots_separate_orbits():
    R = RootSet(((F(2), 1), (F(3), 1)))
    assert len(cluster_orbits(R, 4).orbits) == 2


def test_q1_every_root_alone():
    R = RootSet(((F(2), 1), (F(-2), 1), (F(3), 2)))
    assert len(cluster_orbits(R, 1).orbits) == 3


def test_zero_root_own_orbit():
    R = RootSet(((F(0), 3), (F(1), 1)))
    orbits = cluster_orbits(R, 2).orbits
    zero = [o for o in orbits if o.is_zero]
    assert len(zero) == 1 and zero[0].max_multiplicity == 3


def test_float_orbits_with_q3():
    xi = cmath.exp(2j * cmath.pi / 3)
    R = RootSet(((1.5 + 0j, 1), (1.5 * xi, 2), (0.7 + 0j, 1)))
    orbits = cluster_orbits(R, 3).orbits
    assert sorted(len([m for m in o.members if m[1]]) for o in orbits) == [1, 2]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 359), st.floats(0.5, 3.0), st.integers(1, 3)),
                min_size=1, max_size=5))
def test_random_rootsets_recovered(spec):
    # keep the roots well separated: distinct angles at least 10 degrees apart
    angles = []
    roots = []
    for ang, rad, k in spec:
        if all(min(abs(ang - a), 360 - abs(ang - a)) >= 10 for a in angles):
            angles.append(ang)
            roots.append((rad * cmath.exp(1j * np.deg2rad(ang)), k))
    if sum(k for _, k in roots) > 12:
        roots = roots[:2]
    P = IntPoly.from_roots([v for v, k in roots for _ in range(k)]).to_float()
    R = find_roots(P)
    assert R.degree == P.degree
    found = R.as_dict()
    for v, k in roots:
        match = [w for w in found if abs(w - v) < 1e-8 * max(1, abs(v))]
        assert len(match) == 1 and found[match[0]] == k


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-6, 6).filter(lambda v: v != 0), min_size=1, max_size=4),
       st.integers(1, 6))
def test_orbit_relation_partitions_roots(values, q):
    R = find_roots(IntPoly.from_roots([F(v) for v in values]))
    orbits = cluster_orbits(R, q).orbits
    counted = sum(k for o in orbits for _, k in o.members)
    assert counted == R.degree
