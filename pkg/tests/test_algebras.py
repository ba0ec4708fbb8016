from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import f2_biquadratic, f2u_over_f2u4, f3_tower, f4u_over_f2u2, hamilton, q_fourth_root2, q_sqrt2_sqrt3, quat_char2
from tamecurve.algebras import (
    QuarticTowerSpec,
    QuaternionSpec,
    apply_automorphism,
    build_algebra,
    galois_group,
    hilbert_symbol,
    intermediate_quadratic_fields,
    is_division_algebra,
    primitive_element_exists,
)
from tamecurve.errors import DivisionByZero, ReduciblePolynomial
from tamecurve.fields import QQ, FiniteField

ALGEBRAS = {
    "F3 tower": f3_tower,
    "Hamilton": hamilton,
    "quat char 2": quat_char2,
    "Q(sqrt2,sqrt3)": q_sqrt2_sqrt3,
    "Q(2^1/4)": q_fourth_root2,
    "F2(u,v)": f2_biquadratic,
    "F2(u)/F2(u^4)": f2u_over_f2u4,
    "F4(u)/F2(u^2)": f4u_over_f2u2,
    "(2,3)/Q": lambda: build_algebra(QuaternionSpec.char_not_2(QQ, 2, 3)),
    "F5 tower": lambda: build_algebra(QuarticTowerSpec.make(FiniteField(5), 2, 0, 1)),
}


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_associativity_on_random_triples(name):
    alg = ALGEBRAS[name]()
    rng = random.Random(2024)
    for _ in range(200):
        a, b, c = (alg.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("name", ["F3 tower", "Hamilton", "Q(sqrt2,sqrt3)", "F2(u,v)"])
def test_nonzero_elements_are_invertible_in_division_algebras(name):
    alg = ALGEBRAS[name]()
    rng = random.Random(7)
    for _ in range(30):
        a = alg.random_element(rng)
        if a:
            assert a * a.inverse() == alg.one == a.inverse() * a


def test_split_quaternion_has_zero_divisors():
    alg = quat_char2()
    check = is_division_algebra(alg)
    assert check.is_division is False
    with pytest.raises(DivisionByZero):
        check.witness.inverse()


def test_defining_relations():
    h = hamilton()
    x, y = h.x, h.y
    assert x * x == h.scalar(-1) and y * y == h.scalar(-1) and y * x == -(x * y)
    q = quat_char2()
    assert q.x * q.x == q.x + 1
    assert q.x * q.y == q.y + q.y * q.x
    t = f3_tower()
    assert t.y * t.y == t.x + 1 and t.x * t.y == t.y * t.x


def _conic_has_point(a: int, b: int, bound: int = 12) -> bool:
    """a X² + b Y² = Z² with (X, Y, Z) != 0, by exhaustive search."""
    for X, Y in itertools.product(range(bound + 1), range(-bound, bound + 1)):
        if (X, Y) == (0, 0):
            continue
        v = a * X * X + b * Y * Y
        if v >= 0 and sympy.sqrt(v).is_integer:
            return True
    return False


SQUAREFREE = [n for n in range(-7, 8) if n and sympy.ntheory.factor_.core(abs(n)) == abs(n)]


@pytest.mark.parametrize("a,b", [(a, b) for a in SQUAREFREE for b in SQUAREFREE if a <= b])
def test_division_test_matches_conic_oracle(a, b):
    alg = build_algebra(QuaternionSpec.char_not_2(QQ, a, b))
    assert is_division_algebra(alg).is_division is (not _conic_has_point(a, b))


@given(a=st.integers(-30, 30).filter(bool), b=st.integers(-30, 30).filter(bool))
def test_hilbert_product_formula(a, b):
    places = [None] + sorted(set(sympy.primefactors(2 * a * b)))
    prod = 1
    for p in places:
        prod *= hilbert_symbol(Fraction(a), Fraction(b), p)
    assert prod == 1


def test_hilbert_symbol_values():
    assert hilbert_symbol(Fraction(-1), Fraction(-1), None) == -1
    assert hilbert_symbol(Fraction(-1), Fraction(-1), 2) == -1
    assert hilbert_symbol(Fraction(2), Fraction(3), 3) == -1
    assert hilbert_symbol(Fraction(1), Fraction(5), 5) == 1


@pytest.mark.parametrize(
    "name,order,structure",
    [
        ("F3 tower", 4, "cyclic 4"),
        ("Q(sqrt2,sqrt3)", 4, "Klein four"),
        ("Q(2^1/4)", 2, "cyclic 2"),
        ("F2(u,v)", 1, "trivial"),
        ("F2(u)/F2(u^4)", 1, "trivial"),
    ],
)
def test_galois_groups(name, order, structure):
    alg = ALGEBRAS[name]()
    g = galois_group(alg)
    assert (g.order, g.structure()) == (order, structure)
    for m in g.elements:
        for a, b in itertools.product(alg.basis, repeat=2):
            assert apply_automorphism(alg, m, a * b) == apply_automorphism(alg, m, a) * apply_automorphism(alg, m, b)


@pytest.mark.parametrize(
    "name,exists", [("F3 tower", True), ("Q(sqrt2,sqrt3)", True), ("F2(u,v)", False), ("F2(u)/F2(u^4)", True), ("F4(u)/F2(u^2)", True)]
)
def test_primitive_elements(name, exists):
    res = primitive_element_exists(ALGEBRAS[name]())
    assert res.exists is exists


def test_quadratic_subfields_of_biquadratic_field():
    alg = q_sqrt2_sqrt3()
    gens = {alg.format(q.generator) for q in intermediate_quadratic_fields(alg)}
    assert gens == {"x", "y", "xy"}
    for q in intermediate_quadratic_fields(alg):
        z = q.generator
        assert (z * z).in_base()


def test_reducible_towers_are_rejected():
    k = FiniteField(3)
    with pytest.raises(ReduciblePolynomial):
        build_algebra(QuarticTowerSpec.make(k, 1, 1))  # x² = 1 splits
    with pytest.raises(ReduciblePolynomial):
        build_algebra(QuarticTowerSpec.make(k, 2, 1))  # y² = 1 splits
    with pytest.raises(ValueError):
        build_algebra(QuaternionSpec.char_not_2(QQ, 0, 1))
