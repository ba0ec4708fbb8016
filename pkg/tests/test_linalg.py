from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from tamecurve.errors import Inconsistent
from tamecurve.fields import QQ, FiniteField
from tamecurve.linalg import Matrix, in_span, inverse, rank, solve_linear, span_equal


def matrices(lo: int, hi: int, max_dim: int = 5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(rows=matrices(-3, 3))
def test_rank_and_kernel_over_q_match_sympy(rows):
    A = [[QQ(v) for v in r] for r in rows]
    oracle = sympy.Matrix(rows)
    assert rank(A) == oracle.rank()
    ker = solve_linear(A, field=QQ)
    assert len(ker) == len(oracle.nullspace())
    for v in ker:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in A)


@pytest.mark.parametrize("p", [2, 3, 7])
@given(data=st.data())
def test_rank_over_prime_field_matches_sympy(p, data):
    rows = data.draw(matrices(0, p - 1))
    k = FiniteField(p)
    A = [[k(v) for v in r] for r in rows]
    oracle = DomainMatrix([[sympy.GF(p)(v) for v in r] for r in rows], (len(rows), len(rows[0])), sympy.GF(p))
    assert rank(A) == oracle.rank()


@given(rows=matrices(-4, 4, 4), rhs=st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_solve_linear_particular_solution(rows, rhs):
    A = [[QQ(v) for v in r] for r in rows]
    b = [QQ(v) for v in rhs[: len(rows)]]
    try:
        x, _ = solve_linear(A, b, QQ)
    except Inconsistent:
        aug = sympy.Matrix([r + [bi] for r, bi in zip(rows, rhs)])
        assert aug.rank() > sympy.Matrix(rows).rank()
        return
    assert [sum(a * xi for a, xi in zip(r, x)) for r in A] == b


def test_inverse_and_singular():
    M = Matrix([[QQ(2), QQ(1)], [QQ(1), QQ(1)]], QQ(0))
    inv = inverse(M, QQ)
    assert M @ inv == Matrix.identity(2, QQ(0), QQ(1))
    assert inverse(Matrix([[QQ(1), QQ(2)], [QQ(2), QQ(4)]], QQ(0)), QQ) is None


def test_span_helpers():
    a = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(1)]]
    b = [[Fraction(1), Fraction(1), Fraction(2)], [Fraction(1), Fraction(-1), Fraction(0)]]
    assert span_equal(a, b, 3)
    assert in_span([Fraction(2), Fraction(3), Fraction(5)], a)
    assert not in_span([Fraction(0), Fraction(0), Fraction(1)], a)
