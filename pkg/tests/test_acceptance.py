"""Acceptance criteria 1-11, all with exact arithmetic and zero tolerance."""

from __future__ import annotations

import random
import time

import pytest

from conftest import (
    VARIANT_ALGEBRAS,
    f2_biquadratic,
    f2u_over_f2u4,
    f3_tower,
    f4u_over_f2u2,
    hamilton,
    q_fourth_root2,
    q_sqrt2_sqrt3,
    quat_char2,
)
from tamecurve.algebras import QuarticTowerSpec, build_algebra
from tamecurve.curve import Curve, classify_commutative, enumerate_points, has_efficient_tubular_shift
from tamecurve.errors import ReduciblePolynomial
from tamecurve.fields import FiniteField, GaloisField, RatFuncElement, RationalFunctionField
from tamecurve.ladder import Ladder, verify_ladder, verify_universal_extension
from tamecurve.orbit import SkewPolyAlgebra, certify, derive_relations_from_ladder, presentation_for
from tamecurve.reps import OneFour, TwoTwo, find_isomorphism, kernel_cokernel, simple_regular
from tamecurve.symmetry import (
    automorphism,
    GradedAutomorphism,
    compare_tau_with_shift,
    equivalent_mod_inner,
    fixes_primes,
    ghost_group,
    graded_automorphisms,
    skew_ghost_group,
)


def _report(num: int, ok: bool, detail: str = "") -> None:
    print(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}{': ' + detail if detail else ''}")


@pytest.fixture(scope="module")
def ladders():
    return {name: Ladder.for_algebra(make()) for name, make in VARIANT_ALGEBRAS.items()}


def test_criterion_01_ladder_relations():
    start = time.perf_counter()
    results = {}
    for name, make in VARIANT_ALGEBRAS.items():
        lad = Ladder.for_algebra(make())
        for n in range(1, 7):
            rels = {k: v for k, v in lad.check_relations(n).items() if "alternative" not in k}
            results[(name, n)] = len(rels) == 4 and all(rels.values())
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 5
    _report(1, ok, f"{sum(results.values())}/{len(results)} (variant, n) pairs in {elapsed:.2f}s")
    assert all(results.values()), [k for k, v in results.items() if not v]
    assert elapsed < 5


def test_criterion_02_exactness(ladders):
    bad = []
    for name, lad in ladders.items():
        v = lad.variant
        Sx = simple_regular(v.algebra.x, v.bimodule)
        for n in range(1, 7):
            # the cokernel is recomputed here and matched against S_x independently of the report
            kc = kernel_cokernel(lad.X(n))
            iso = find_isomorphism(kc.cokernel, Sx)
            rep = verify_universal_extension(n, v, lad)
            if not (kc.kernel.is_zero() and iso is not None and iso.is_valid() and rep.exact):
                bad.append((name, n))
    _report(2, not bad, f"{len(bad)} failures")
    assert not bad


def test_criterion_03_hom_dimensions(ladders):
    bad = []
    for name, lad in ladders.items():
        for row in verify_ladder(lad, 6):
            if (row.end_dim, row.hom_dim, row.hom_from_Sx) != (1, 3, 0):
                bad.append((name, row.n))
        pres = presentation_for(lad.variant, 8)
        for row in certify(pres, lad, max_t=8):
            if not (row.normal_words == row.hom_dim == row.monomial_rank == 2 * row.degree + 1):
                bad.append((name, "R", row.degree))
    _report(3, not bad, f"{len(bad)} failures")
    assert not bad


def test_criterion_04_presentation_oracle(ladders):
    out = {}
    for name, lad in ladders.items():
        res = derive_relations_from_ladder(lad, ns=(1, 2, 3, 4))
        out[name] = res.ok and all(len(k) == 4 for k in res.kernels.values())
    _report(4, all(out.values()), str(out))
    assert all(out.values())


def _centre_dims(make, degrees=range(5)):
    pres = presentation_for(Ladder.for_algebra(make()).variant)
    return pres, [len(pres.centre_basis(d)) for d in degrees]


def test_criterion_05_centre():
    checks = {}
    for label, make in [("F3 tower", f3_tower), ("Q(sqrt2,sqrt3)", q_sqrt2_sqrt3), ("F2(u)/F2(u^4)", f2u_over_f2u4)]:
        pres, dims = _centre_dims(make)
        central = pres.is_central(pres.element("X")) and pres.is_central(pres.element("YY"))
        checks[label] = dims == [d // 2 + 1 for d in range(5)] and central
    pres, dims = _centre_dims(f2_biquadratic)
    checks["F2(u,v) commutative"] = dims == [2 * d + 1 for d in range(5)] and pres.is_commutative(4)
    for n in (2, 3, 4):
        ring = SkewPolyAlgebra(3 if n != 4 else 2, 1, n)
        checks[f"skew n={n}"] = all(
            ring.centre_dimension_over_k(d) == len(ring.expected_centre_monomials(d))
            and all(j % n == 0 for z in ring.centre_basis(d) for (_, j) in z)
            for d in range(5)
        )
    _report(5, all(checks.values()), str(checks))
    assert all(checks.values())


def test_criterion_06_classifier_golden_set():
    start = time.perf_counter()
    golden = [
        (TwoTwo(FiniteField(5), 1), "Commutative (Brauer-Severi)", "k(T)"),
        (OneFour(hamilton()), "Commutative (Brauer-Severi)", None),
        (OneFour(f2_biquadratic()), "Commutative (not Brauer-Severi)", None),
        (OneFour(f2u_over_f2u4()), "Noncommutative (s = 2)", "k<U,V>/(UV+VU+1, V^2+u^4U^2)"),
        (OneFour(f4u_over_f2u2()), "Noncommutative (s = 2)", None),
    ]
    verdicts = []
    for bim, verdict, ff in golden:
        d = classify_commutative(bim)
        verdicts.append(d.verdict == verdict and (ff is None or d.function_field.presentation == ff))
    elapsed = time.perf_counter() - start
    _report(6, all(verdicts) and elapsed < 2, f"{sum(verdicts)}/5 verdicts in {elapsed:.2f}s")
    assert all(verdicts)
    assert elapsed < 2


def test_criterion_07_point_census():
    curve = Curve(OneFour(f3_tower()), 2)
    pres = curve.presentation
    points = enumerate_points(curve, 2)
    expected = [pres.normal_form(w) for w in ("X", "YY")]
    k = curve.base
    for c in (1, 2):
        expected.append(pres.add(pres.normal_form("YY"), pres.normal_form("XX"), k(c)))
    matched = [sum(pres.proportional(p.prime, e) is not None for p in points) for e in expected]
    ok = (
        len(points) == 4
        and matched == [1, 1, 1, 1]
        and all(p.f == 1 for p in points)
        and (points[0].f, points[0].e) == (1, 1)
    )
    _report(7, ok, ", ".join(f"{p.generator_text(k)} (f={p.f}, e={p.e})" for p in points))
    assert ok


def test_criterion_08_ghost_groups():
    checks = {}
    for label, make, order, structure in [
        ("Q(sqrt2,sqrt3)", q_sqrt2_sqrt3, 4, "Klein four"),
        ("Q(2^1/4)", q_fourth_root2, 2, None),
    ]:
        rep = ghost_group(presentation_for(Ladder.for_algebra(make()).variant))
        checks[label] = rep.order == order and (structure is None or rep.structure == structure)
    rep = skew_ghost_group(SkewPolyAlgebra.over(FiniteField(3), 2))
    checks["(2,2) F9/F3"] = (rep.order, rep.structure) == (2, "cyclic 2")
    pres = presentation_for(Ladder.for_algebra(f3_tower()).variant)
    k = pres.field
    one = k.one
    auts = graded_automorphisms(pres)
    alpha = automorphism(k, {"X": one}, {"Y": -one, "Z": one}, {"Y": one, "Z": one})
    neg_x = automorphism(k, {"X": -one}, {"Y": one}, {"Z": one})
    checks["alpha found"] = alpha.matrix in {g.matrix for g in auts}
    checks["alpha^2 = (X -> -X) mod inner"] = equivalent_mod_inner(alpha.compose(alpha), neg_x, k) is not None
    rep = ghost_group(pres, auts)
    checks["alpha not in Aut0"] = alpha.matrix not in {g.matrix for g in rep.aut0} and not fixes_primes(
        pres, alpha, [pres.normal_form("YY")]
    )
    _report(8, all(checks.values()), str(checks))
    assert all(checks.values())


def test_criterion_09_ar_translation():
    cmp = compare_tau_with_shift(Ladder.for_algebra(q_sqrt2_sqrt3()))
    k = cmp.field
    neg_x = automorphism(k, {"X": -k.one}, {"Y": k.one}, {"Z": k.one})
    up_to_scalar = equivalent_mod_inner(GradedAutomorphism(cmp.matrix), neg_x, k) is not None
    rels = sorted(cmp.relations_text())
    expected = sorted(["YX+XY", "ZX+XZ", "ZY+YZ", "Z^2+3Y^2+2X^2"])
    ok = up_to_scalar and rels == expected
    _report(9, ok, f"ghost {cmp.ghost}, relations {rels}")
    assert ok


def _random_tower(p: int, rng: random.Random):
    k = FiniteField(p)
    while True:
        c1, c0, d1, a0, a1 = (rng.randrange(p) for _ in range(5))
        try:
            return build_algebra(QuarticTowerSpec.make(k, c0, a0, a1, c1, d1))
        except ReduciblePolynomial:
            continue


def test_criterion_10_unirational_existence():
    rng = random.Random(20240611)
    verdicts = []
    for i in range(10):
        alg = _random_tower((3, 5, 7)[i % 3], rng)
        res = has_efficient_tubular_shift(Curve(OneFour(alg)))
        verdicts.append((alg.spec, res.verdict))
    ok = all(v == "Yes" for _, v in verdicts)
    _report(10, ok, f"{sum(v == 'Yes' for _, v in verdicts)}/10 Yes")
    assert ok


ALGEBRAS_11 = {
    "F3 tower": f3_tower,
    "Hamilton": hamilton,
    "quat char 2": quat_char2,
    "Q(sqrt2,sqrt3)": q_sqrt2_sqrt3,
    "Q(2^1/4)": q_fourth_root2,
    "F2(u,v)": f2_biquadratic,
    "F2(u)/F2(u^4)": f2u_over_f2u4,
    "F4(u)/F2(u^2)": f4u_over_f2u2,
}


def _graded_triples(pres, rng, count):
    words = [w for d in range(1, 3) for w in pres.basis(d)]
    for _ in range(count):
        yield [{w: pres.field.random_element(rng) if pres.field.is_finite else pres.field(rng.randint(-5, 5)) for w in rng.sample(words, 2)} for _ in range(3)]


def test_criterion_11_property_suites():
    rng = random.Random(11)
    checks = {}
    for name, make in ALGEBRAS_11.items():
        alg = make()
        ok = True
        for _ in range(200):
            a, b, c = (alg.random_element(rng) for _ in range(3))
            ok &= (a * b) * c == a * (b * c)
        checks[f"assoc {name}"] = ok
    for name, make in VARIANT_ALGEBRAS.items():
        pres = presentation_for(Ladder.for_algebra(make()).variant)
        checks[f"assoc R {name}"] = all(
            pres.multiply(pres.multiply(a, b), c) == pres.multiply(a, pres.multiply(b, c)) for a, b, c in _graded_triples(pres, rng, 200)
        )
    ring = SkewPolyAlgebra(3, 1, 2)
    els = [(i, j) for i in range(3) for j in range(3)]
    elems = [c for c in ring.K.elements() if c]

    def rand():
        return {key: rng.choice(elems) for key in rng.sample(els, 2)}

    checks["assoc skew"] = all(
        ring.multiply(ring.multiply(a, b), c) == ring.multiply(a, ring.multiply(b, c)) for a, b, c in ((rand(), rand(), rand()) for _ in range(200))
    )
    # canonical forms: re-normalizing a normalized value changes nothing
    K = RationalFunctionField(3, ["s", "t"])
    s, t = K.gens
    canon = True
    for _ in range(200):
        num = s ** rng.randint(0, 3) * t ** rng.randint(0, 2) + K(rng.randint(0, 2))
        den = (s + t) ** rng.randint(0, 2) * (t + K(1))
        f = num / den
        again = RatFuncElement(f.num, f.den, K)
        canon &= (again.num, again.den) == (f.num, f.den) and K.parse(K.format(f)) == f
    G = GaloisField(3, 4)
    for _ in range(200):
        x = G.random_element(rng) * G.random_element(rng)
        canon &= len(x.c) == 4 and all(0 <= v < 3 for v in x.c)
        canon &= G(list(x.c)) == x and G.parse(G.format(x)) == x
    checks["canonical idempotence"] = canon
    pres = presentation_for(Ladder.for_algebra(f3_tower()).variant)
    auts = graded_automorphisms(pres)
    preserve = all(pres.preserves_relations(g.images()) for g in auts)
    for a, b, _ in _graded_triples(pres, rng, 200):
        g = rng.choice(auts)
        preserve &= g.apply(pres, pres.multiply(a, b)) == pres.multiply(g.apply(pres, a), g.apply(pres, b))
    checks["automorphisms preserve relations"] = preserve
    bad = [k for k, v in checks.items() if not v]
    _report(11, not bad, f"{len(checks) - len(bad)}/{len(checks)} suites")
    assert not bad
