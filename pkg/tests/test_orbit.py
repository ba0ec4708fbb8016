from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import VARIANT_ALGEBRAS, f2_biquadratic, f2u_over_f2u4, q_fourth_root2, q_sqrt2_sqrt3
from tamecurve.fields import FiniteField
from tamecurve.ladder import Ladder
from tamecurve.orbit import (
    SkewPolyAlgebra,
    certify,
    commutativity_expected,
    derive_relations_from_ladder,
    extreme_case_check,
    non_normal_witness,
    presentation_for,
)

VARIANTS = list(VARIANT_ALGEBRAS)


@pytest.mark.parametrize("name", VARIANTS)
def test_rewriting_basis_has_2t_plus_1_words(variant_ladders, name):
    pres = presentation_for(variant_ladders[name].variant, max_degree=8)
    assert [pres.dim_degree(t) for t in range(9)] == [2 * t + 1 for t in range(9)]


@pytest.mark.parametrize("name", VARIANTS)
def test_certification_against_composition(variant_ladders, name):
    lad = variant_ladders[name]
    rows = certify(presentation_for(lad.variant, 8), lad, max_t=8)
    assert all(r.ok for r in rows)
    assert [r.hom_dim for r in rows] == [2 * t + 1 for t in range(9)]


@pytest.mark.parametrize("name", VARIANTS)
def test_ladder_kernel_spans_presented_relations(variant_ladders, name):
    res = derive_relations_from_ladder(variant_ladders[name])
    assert res.ok
    assert all(len(k) == 4 for k in res.kernels.values())


def test_sign_erased_relations_do_not_fit_the_tower(variant_ladders):
    # erasing the sign of ZY in the CommExt presentation must not match the F3 ladder
    from tamecurve.errors import PresentationMismatch
    from tamecurve.orbit import GradedPresentation

    lad = variant_ladders["CommExt/F3"]
    k = lad.base
    one = k.one
    v = lad.variant
    wrong = GradedPresentation(
        k, "XYZ",
        [{"XY": one, "YX": -one}, {"XZ": one, "ZX": -one}, {"ZY": one, "YZ": -one}, {"ZZ": one, "YY": v.c0, "XX": -v.a0}],
    )
    with pytest.raises(PresentationMismatch):
        derive_relations_from_ladder(lad, presentation=wrong)


def _centre_monomials(pres, d):
    """Central elements of degree d, as a dimension."""
    return len(pres.centre_basis(d))


@pytest.mark.parametrize("name", ["CommExt/F3"])
def test_centre_is_k_X_Y2(variant_ladders, name):
    pres = presentation_for(variant_ladders[name].variant)
    for d in range(5):
        assert _centre_monomials(pres, d) == d // 2 + 1
    assert pres.is_central(pres.element("X"))
    assert pres.is_central(pres.element("YY"))
    assert not pres.is_central(pres.element("Y"))


@pytest.mark.parametrize("make", [q_sqrt2_sqrt3, q_fourth_root2])
def test_centre_over_rationals(make):
    pres = presentation_for(Ladder.for_algebra(make()).variant)
    assert not commutativity_expected(Ladder.for_algebra(make()).variant)
    assert [_centre_monomials(pres, d) for d in range(5)] == [1, 1, 2, 2, 3]


@pytest.mark.parametrize("name", ["SkewExt/Q", "QuatChar2/F2"])
def test_quaternion_variants_are_commutative(variant_ladders, name):
    pres = presentation_for(variant_ladders[name].variant)
    assert pres.is_commutative(4)
    assert [_centre_monomials(pres, d) for d in range(5)] == [2 * d + 1 for d in range(5)]


def test_char2_without_linear_term_is_commutative():
    lad = Ladder.for_algebra(f2_biquadratic())
    assert commutativity_expected(lad.variant)
    assert presentation_for(lad.variant).is_commutative(4)


def test_extreme_case_y2_and_z2_proportional():
    pres = presentation_for(Ladder.for_algebra(f2u_over_f2u4()).variant)
    assert not pres.is_commutative(2)
    assert extreme_case_check(pres) is not None


def test_y_is_not_normal_in_the_f3_tower(variant_ladders):
    pres = presentation_for(variant_ladders["CommExt/F3"].variant)
    assert non_normal_witness(pres, pres.element("X"), 1) is None
    assert non_normal_witness(pres, pres.element("Y"), 1) is not None


@given(words=st.lists(st.text("XYZ", min_size=1, max_size=3), min_size=3, max_size=3))
def test_normal_form_is_associative(words):
    pres = _F3_PRES
    a, b, c = (pres.element(w) for w in words)
    assert pres.multiply(pres.multiply(a, b), c) == pres.multiply(a, pres.multiply(b, c))


@given(word=st.text("XYZ", min_size=0, max_size=4))
def test_normal_form_is_idempotent(word):
    nf = _F3_PRES.normal_form(word)
    again = {}
    for w, c in nf.items():
        again = _F3_PRES.add(again, _F3_PRES.normal_form(w), c)
    assert again == nf


@pytest.mark.parametrize("p,m,n", [(3, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 3), (2, 2, 2)])
def test_skew_polynomial_centre(p, m, n):
    ring = SkewPolyAlgebra(p, m, n)
    for d in range(5):
        assert ring.centre_dimension_over_k(d) == len(ring.expected_centre_monomials(d))
        for z in ring.centre_basis(d):
            assert ring.is_central(z)
            assert all(j % n == 0 for (_, j) in z)


def test_skew_ring_from_base_field():
    ring = SkewPolyAlgebra.over(FiniteField(3), 2)
    assert ring.dim_degree(3) == 8
    assert len(ring.fixed_field()) == 3


_F3_PRES = presentation_for(Ladder.for_algebra(VARIANT_ALGEBRAS["CommExt/F3"]()).variant)
