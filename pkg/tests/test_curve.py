from __future__ import annotations

import pytest
from sympy import divisors, mobius

from conftest import f2_biquadratic, f2u_over_f2u4, f3_tower, f4u_over_f2u2, hamilton, quat_char2
from tamecurve.curve import (
    Curve,
    centre_primes,
    classify_commutative,
    enumerate_points,
    has_efficient_tubular_shift,
    non_associated,
)
from tamecurve.errors import InfiniteField, UnknownVerdict, UnsupportedShape
from tamecurve.fields import QQ, FiniteField
from tamecurve.reps import OneFour, TwoTwo


def _necklace(q: int, j: int) -> int:
    return sum(mobius(j // d) * q**d for d in divisors(j)) // j


@pytest.mark.parametrize("p", [2, 3, 5])
def test_centre_prime_counts(p):
    k = FiniteField(p)
    by_degree: dict[int, int] = {}
    for d, _ in centre_primes(k, 6):
        by_degree[d] = by_degree.get(d, 0) + 1
    assert by_degree == {1: 1, 2: _necklace(p, 1), 4: _necklace(p, 2), 6: _necklace(p, 3)}


@pytest.fixture(scope="module")
def f3_points():
    curve = Curve(OneFour(f3_tower()), 2)
    return curve, enumerate_points(curve, 2)


def test_f3_census(f3_points):
    curve, pts = f3_points
    k = curve.base
    assert [p.generator_text(k) for p in pts] == ["X", "Y^2", "Y^2+X^2", "Y^2-X^2"]
    assert all(p.f == 1 for p in pts)
    assert (pts[0].f, pts[0].e) == (1, 1)
    assert [p.e for p in pts[1:]] == [2, 2, 2]
    assert pts[0].end_description == "quadratic field k[t]/(t^2+1)"
    assert non_associated(curve.presentation, pts)


def test_f3_census_is_thread_independent(f3_points):
    curve, pts = f3_points
    again = enumerate_points(Curve(OneFour(f3_tower()), 2), 2, threads=4)
    assert [p.to_json(curve.base) for p in again] == [p.to_json(curve.base) for p in pts]


def test_points_need_a_finite_field():
    with pytest.raises(InfiniteField):
        enumerate_points(Curve(OneFour(hamilton())), 1)


def test_points_need_a_noncommutative_tower():
    with pytest.raises(UnsupportedShape):
        enumerate_points(Curve(OneFour(quat_char2())), 1)


GOLDEN = [
    ("Kronecker/F5", lambda: TwoTwo(FiniteField(5), 1), "Commutative (Brauer-Severi)"),
    ("(-1,-1/Q)", lambda: OneFour(hamilton()), "Commutative (Brauer-Severi)"),
    ("F2(u,v)/F2(u^2,v^2)", lambda: OneFour(f2_biquadratic()), "Commutative (not Brauer-Severi)"),
    ("F2(u)/F2(u^4)", lambda: OneFour(f2u_over_f2u4()), "Noncommutative (s = 2)"),
    ("F4(u)/F2(u^2)", lambda: OneFour(f4u_over_f2u2()), "Noncommutative (s = 2)"),
]


@pytest.mark.parametrize("name,make,verdict", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_classifier_golden_set(name, make, verdict):
    assert classify_commutative(make()).verdict == verdict


def test_kronecker_function_field():
    assert classify_commutative(TwoTwo(FiniteField(5), 1)).function_field.presentation == "k(T)"


def test_inseparable_tower_presentation():
    d = classify_commutative(OneFour(f2u_over_f2u4()))
    assert d.function_field.presentation == "k<U,V>/(UV+VU+1, V^2+u^4U^2)"


def test_split_quaternions_are_rejected():
    with pytest.raises(UnsupportedShape):
        classify_commutative(OneFour(quat_char2()))


def test_simple_two_two_is_not_classified():
    with pytest.raises(UnknownVerdict):
        classify_commutative(TwoTwo(QQ, 1, simple=True, label="Q(2^1/3)"))


def test_efficient_shift_for_f3_tower():
    res = has_efficient_tubular_shift(Curve(OneFour(f3_tower())))
    assert res.verdict == "Yes" and (res.f, res.e) == (1, 1)


def test_efficient_shift_for_kronecker():
    assert has_efficient_tubular_shift(Curve(TwoTwo(FiniteField(5), 1))).verdict == "Yes"
