from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from tamecurve.errors import DivisionByZero, SpecParseError
from tamecurve.fields import (
    QQ,
    FiniteField,
    Poly,
    RatFuncElement,
    RationalFunctionField,
    factor,
    field_from_descriptor,
    irreducible_polys,
    is_irreducible,
)

PRIMES = [2, 3, 5, 7]
GF9 = FiniteField(3, 2)
GF8 = FiniteField(2, 3)
F2ST = RationalFunctionField(2, ["s", "t"], display={"s": "u^2", "t": "v^2"})
F3S = RationalFunctionField(3, ["s"])


def gf_elements(k):
    return st.sampled_from(list(k.elements()))


@pytest.mark.parametrize("p", PRIMES)
@given(a=st.integers(-50, 50), b=st.integers(-50, 50))
def test_prime_field_matches_integer_arithmetic(p, a, b):
    k = FiniteField(p)
    assert k(a) + k(b) == k((a + b) % p)
    assert k(a) * k(b) == k((a * b) % p)
    if b % p:
        assert (k(a) / k(b)) * k(b) == k(a)


@pytest.mark.parametrize("k", [GF9, GF8], ids=["GF9", "GF8"])
def test_extension_field_axioms(k):
    elems = list(k.elements())
    assert len(elems) == k.order == len(set(elems))
    for a in elems:
        assert a + (-a) == k.zero
        if a:
            assert a * a.inverse() == k.one
    # multiplicative group is cyclic of order q - 1
    orders = set()
    for a in elems[1:]:
        e, x = 1, a
        while x != k.one:
            x, e = x * a, e + 1
        orders.add(e)
    assert max(orders) == k.order - 1


@given(a=gf_elements(GF9), b=gf_elements(GF9), c=gf_elements(GF9))
def test_gf9_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


def test_frobenius_fixes_prime_field():
    fixed = [a for a in GF9.elements() if GF9.frobenius(a) == a]
    assert len(fixed) == 3


def _necklace(q: int, n: int) -> int:
    return sum(sympy.mobius(n // d) * q**d for d in sympy.divisors(n)) // n


@pytest.mark.parametrize("p,n", [(2, 1), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_irreducible_count_matches_gauss_formula(p, n):
    assert len(irreducible_polys(FiniteField(p), n)) == _necklace(p, n)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_factor_matches_sympy(p, data):
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=2, max_size=7))
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    k = FiniteField(p)
    f = Poly(k, coeffs)
    unit, ours = factor(f)
    # oracle: sympy's dense Galois-field factoriser (coefficients high degree first)
    _, theirs = gf_factor([ZZ(c) for c in reversed(coeffs)], p, ZZ)
    ours_set = sorted((tuple(int(c) for c in g.coeffs), m) for g, m in ours)
    theirs_set = [(tuple(int(c) % p for c in reversed(g)), m) for g, m in theirs]
    assert ours_set == sorted(theirs_set)
    rebuilt = Poly(k, [unit])
    for g, m in ours:
        rebuilt = rebuilt * g**m
    assert rebuilt == f
    assert all(is_irreducible(g) for g, _ in ours)


def test_rationals_are_fractions():
    assert QQ.parse("-1/2") == Fraction(-1, 2)
    assert QQ.sqrt(Fraction(36, 25)) in (Fraction(6, 5), Fraction(-6, 5))
    assert not QQ.is_square(QQ(2))


def test_ratfunc_arithmetic():
    s, t = F2ST.gens
    a = (s + t) / (s * t + 1)
    assert a * (s * t + 1) == s + t
    assert (a - a) == F2ST.zero
    with pytest.raises(DivisionByZero):
        F2ST.zero.inverse()
    assert F2ST.format(s**2 + t) == "u^4+v^2"


def _ratfunc(k, nums, dens):
    s = k.gens[0]
    num = sum((c * s**i for i, c in enumerate(nums)), k.zero)
    den = sum((c * s**i for i, c in enumerate(dens)), k.zero)
    return num, den


@given(nums=st.lists(st.integers(0, 2), min_size=1, max_size=4), dens=st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_ratfunc_canonical_form_is_idempotent(nums, dens):
    num, den = _ratfunc(F3S, nums, dens)
    if not den:
        return
    a = num / den
    again = RatFuncElement(a.num, a.den, F3S)
    assert (again.num, again.den) == (a.num, a.den)
    assert F3S.parse(F3S.format(a)) == a
    assert a.den.LC == 1


@given(nums=st.lists(st.integers(0, 2), min_size=1, max_size=3), dens=st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_ratfunc_denominator_is_coprime(nums, dens):
    num, den = _ratfunc(F3S, nums, dens)
    if not den:
        return
    a = num / den
    assert a.num.gcd(a.den) == F3S._ring.one


def test_ratfunc_square_roots_in_char_2():
    s, t = F2ST.gens
    assert F2ST.sqrt(s**2 * t**4) == s * t**2
    assert not F2ST.is_square(s)


@pytest.mark.parametrize("k", [FiniteField(5), GF9, QQ, F3S], ids=["F5", "GF9", "Q", "F3(s)"])
def test_descriptor_round_trip(k):
    k2 = field_from_descriptor(k.descriptor())
    for a in k.sample(6):
        assert k2.parse(k.format(a)) == k.parse(k.format(a))


def test_descriptor_rejects_unknown_keys():
    with pytest.raises(SpecParseError) as info:
        field_from_descriptor({"kind": "finite", "p": 3, "colour": 1})
    assert info.value.field == "colour"
    with pytest.raises(SpecParseError):
        field_from_descriptor({"kind": "finite", "p": 4})
