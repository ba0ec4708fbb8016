"""The curve 𝕏: points, their invariants, and the commutativity verdict.

Points over a finite base field are enumerated through the centre
C = k[X, W] of the orbit algebra, W = Y² (weights 1 and 2).  Each
height-one homogeneous prime of C is read back in R; its cokernel
representation coker(π: L -> L(d)) is S^e for the simple regular S at
the point, which gives (f, e).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebras import (
    Algebra,
    QuaternionSpec,
    intermediate_quadratic_fields,
    is_division_algebra,
    primitive_element_exists,
)
from .errors import (
    ElementInBase,
    InfiniteField,
    NonIntegralInvariant,
    TameCurveError,
    UnknownVerdict,
    UnsupportedShape,
)
from .fields import irreducible_polys
from .linalg import solve_linear
from .ladder import COMM_EXT, Ladder, LadderVariant
from .orbit import (
    FunctionFieldPresentation,
    GradedPresentation,
    _fmt_terms,
    certify,
    format_poly,
    function_field_presentation,
    kronecker_function_field,
    presentation_for,
    skew_function_field,
)
from .reps import (
    OneFour,
    Rep,
    TwoTwo,
    end_ring,
    hom_basis,
    hom_dimension,
    index_multiplicity,
    kernel_cokernel,
    simple_regular,
    structure_sheaf,
)

DEFAULT_MAX_DEGREE = 3
DEFAULT_SEARCH_BOUND = 1000


@dataclass
class Point:
    prime: dict  # normal form of π_x in R
    degree: int
    f: int
    e: int
    end_description: str
    centre_prime: str = ""
    simple: Rep | None = dc_field(default=None, repr=False, compare=False)

    @property
    def is_unirational(self) -> bool:
        return self.f == 1 and self.e == 1

    def generator_text(self, field) -> str:
        return format_poly(field, self.prime)

    def to_json(self, field) -> dict:
        return {
            "generator": self.generator_text(field),
            "degree": self.degree,
            "centre_prime": self.centre_prime,
            "f": self.f,
            "e": self.e,
            "end": self.end_description,
            "unirational": self.is_unirational,
        }


class Curve:
    """A tame bimodule with the data needed to study its curve."""

    def __init__(self, bimodule, max_degree: int = DEFAULT_MAX_DEGREE):
        self.bimodule = bimodule
        self.max_degree = max_degree
        self._ladder: Ladder | None = None
        self._presentation: GradedPresentation | None = None

    @property
    def base(self):
        return self.bimodule.base

    @property
    def algebra(self) -> Algebra | None:
        return self.bimodule.algebra if isinstance(self.bimodule, OneFour) else None

    @property
    def ladder(self) -> Ladder:
        if self._ladder is None:
            if self.algebra is None:
                raise UnsupportedShape("representations are implemented for (1,4)-bimodules only")
            self._ladder = Ladder.for_algebra(self.algebra)
        return self._ladder

    @property
    def presentation(self) -> GradedPresentation:
        if self._presentation is None:
            self._presentation = presentation_for(self.ladder.variant, max(8, 2 * self.max_degree + 1))
        return self._presentation


def _as_curve(curve_or_bimodule) -> Curve:
    if isinstance(curve_or_bimodule, Curve):
        return curve_or_bimodule
    if isinstance(curve_or_bimodule, Algebra):
        return Curve(OneFour(curve_or_bimodule))
    return Curve(curve_or_bimodule)


# -- centre primes ----------------------------------------------------------------


def centre_primes(field, max_degree: int) -> list[tuple[int, dict]]:
    """Weighted-homogeneous primes of k[X, W] (deg X = 1, deg W = 2) up to scalar.

    Returned as (R-degree, {word: coefficient}) with W written as YY.
    X, then X^{2j}·h(W/X²) for monic irreducible h of degree j.
    """
    one = field.one
    out = [(1, {"X": one})] if max_degree >= 1 else []
    for j in range(1, max_degree // 2 + 1):
        for h in irreducible_polys(field, j):
            poly = {}
            # h(t) = Σ c_i t^i  ->  Σ c_i W^i X^{2(j-i)}
            for i in range(j, -1, -1):
                c = h.coeffs[i]
                if c:
                    poly["YY" * i + "XX" * (j - i)] = c
            out.append((2 * j, poly))
    return out


def _reorder(pres: GradedPresentation, poly: dict) -> dict:
    """Largest word first, for display."""
    return dict(sorted(poly.items(), key=lambda t: pres._key(t[0]), reverse=True))


def _simple_constituent(T: Rep, seed: int = 0, tries: int = 30) -> Rep:
    """A simple subrepresentation of T, by shrinking along images of endomorphisms.

    Simplicity is certified only up to the sampled endomorphisms (a basis
    of End plus ``tries`` random combinations).
    """
    k = T.algebra.base
    rng = random.Random(seed)
    while True:
        basis = hom_basis(T, T)
        candidates = list(basis)
        for _ in range(tries):
            acc = basis[0].scale(k.zero)
            for b in basis:
                acc = acc + b.scale(k.random_element(rng))
            candidates.append(acc)
        best = None
        for phi in candidates:
            if phi.is_zero():
                continue
            kc = kernel_cokernel(phi)
            if kc.image_dims != T.dimension_vector and (best is None or kc.image_dims < best.image_dims):
                best = kc
        if best is None:
            return T
        T = kernel_cokernel(best.projection).kernel


def _prime_of(curve: Curve, S: Rep, max_degree: int) -> tuple[int, dict]:
    """The normal element π of least degree d with coker(π: L -> L(d)) S-isotypic.

    π spans {f ∈ R_d : g∘f = 0 for all g ∈ Hom(L(d), S)}.
    """
    lad, pres = curve.ladder, curve.presentation
    k = curve.base
    for d in range(S.n, max_degree + 1, S.n):
        hom = lad.hom(1, d)
        maps = hom_basis(lad.P(1 + d), S)
        rows = []
        for g in maps:
            cols = [(g @ b).coordinates() for b in hom]
            rows += [[col[i] for col in cols] for i in range(len(cols[0]))]
        space = solve_linear(rows, field=k) if rows else [[k.one if i == j else k.zero for i in range(len(hom))] for j in range(len(hom))]
        if not space:
            continue
        if len(space) > 1:
            raise NonIntegralInvariant(f"the prime of degree {d} is not unique up to scalar")
        words = pres.basis(d)
        target = hom[0].scale(k.zero)
        for b, c in zip(hom, space[0]):
            target = target + b.scale(c)
        cols = [lad.word(1, w).coordinates() for w in words]
        A = [[col[i] for col in cols] for i in range(len(cols[0]))]
        coeffs, _ = solve_linear(A, target.coordinates(), k)
        poly = {w: c for w, c in zip(words, coeffs) if c}
        lead = max(poly, key=pres._key)
        inv = poly[lead].inverse()
        return d, _reorder(pres, {w: c * inv for w, c in poly.items()})
    raise NonIntegralInvariant("no prime element found below the degree of its central multiple")


def point_invariants(curve: Curve, central: dict, degree: int, seed: int = 0):
    """(π, d, f, e, End(S), S) for the point whose centre prime is ``central``.

    S is a simple constituent of coker(central); π is the lift of least
    degree, and coker(π) must be S^e with End(S^e) = M_e(End(S)).
    """
    lad = curve.ladder
    kc = kernel_cokernel(lad.combination(1, central))
    if not kc.kernel.is_zero():
        raise NonIntegralInvariant("the centre prime is not a monomorphism")
    S = _simple_constituent(kc.cokernel, seed)
    d, prime = _prime_of(curve, S, degree)
    Sp = kernel_cokernel(lad.combination(1, prime)).cokernel
    data = index_multiplicity(S)
    E = end_ring(Sp)
    eps = curve.bimodule.epsilon
    e = data.e
    if (
        Sp.dimension_vector != (e * S.m, e * S.n)
        or E.dimension != e * e * data.end_dim
        or hom_dimension(structure_sheaf(curve.bimodule), Sp) != e * data.f * eps
    ):
        raise NonIntegralInvariant(f"coker(π) is not S^{e}")
    return prime, d, data.f, e, data.end_ring, S


def enumerate_points(curve, max_degree: int | None = None, seed: int = 0, threads: int = 1) -> list[Point]:
    """Points of 𝕏 whose prime has degree ≤ max_degree (finite k only)."""
    curve = _as_curve(curve)
    d_max = curve.max_degree if max_degree is None else max_degree
    k = curve.base
    if not k.is_finite:
        raise InfiniteField("points are enumerated over finite base fields only")
    if curve.algebra is None:
        raise UnsupportedShape("points are enumerated for (1,4)-bimodules only")
    if curve.ladder.variant.kind != COMM_EXT or curve.presentation.is_commutative():
        raise UnsupportedShape("point enumeration uses the centre k[X, Y²] of a noncommutative orbit algebra")
    pres = curve.presentation
    pres.max_degree = max(pres.max_degree, 2 * d_max)
    if not all(row.ok for row in certify(pres, curve.ladder, max(2, d_max))):
        raise NonIntegralInvariant("orbit algebra presentation disagrees with the ladder")

    def build(item):
        degree, cpoly = item
        central = pres.normal_form(cpoly)
        if not pres.is_central(central):
            raise NonIntegralInvariant(f"{format_poly(k, central)} is not central")
        prime, d, f, e, E, S = point_invariants(curve, central, degree, seed)
        if not pres.is_normal(prime, d, d + 2):
            raise NonIntegralInvariant(f"{format_poly(k, prime)} is not normal")
        return Point(prime, d, f, e, E.description, format_poly(k, _reorder(pres, central)), S)

    items = centre_primes(k, d_max)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            points = list(pool.map(build, items))
    else:
        points = [build(it) for it in items]
    points.sort(key=lambda p: (p.degree, len(p.prime), p.generator_text(k)))
    return points


def non_associated(pres: GradedPresentation, points: list[Point]) -> bool:
    """No two enumerated primes of equal degree are scalar multiples."""
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            if p.degree == q.degree and pres.proportional(p.prime, q.prime) is not None:
                return False
    return True


# -- classification -----------------------------------------------------------------


@dataclass
class CurveDescriptor:
    bimodule: str
    epsilon: int
    commutative: bool
    s: int
    function_field: FunctionFieldPresentation
    brauer_severi: bool
    orbit_algebra: str = ""
    reason: str = ""

    @property
    def verdict(self) -> str:
        if self.commutative:
            return "Commutative (Brauer-Severi)" if self.brauer_severi else "Commutative (not Brauer-Severi)"
        return f"Noncommutative (s = {self.s})"

    def to_json(self) -> dict:
        return {
            "bimodule": self.bimodule,
            "epsilon": self.epsilon,
            "verdict": self.verdict,
            "commutative": self.commutative,
            "brauer_severi": self.brauer_severi,
            "s": self.s,
            "function_field": self.function_field.to_json(),
            "orbit_algebra": self.orbit_algebra,
            "reason": self.reason,
        }


def _quaternion_forms(alg: Algebra) -> tuple[str, FunctionFieldPresentation]:
    s: QuaternionSpec = alg.spec
    k = alg.base
    one = k.one
    if s.variant == "charNot2":
        a, b = s.a, s.b
        rel = _fmt_terms(k, [(-a, "X^2"), (-b, "Y^2"), (a * b, "Z^2")])
    else:
        rel = _fmt_terms(k, [(s.c0, "X^2"), (s.a0, "Y^2"), (one, "YZ"), (one, "Z^2")])
    return f"k[X,Y,Z]/({rel})", function_field_presentation(LadderVariant.from_algebra(alg))


def classify_commutative(bimodule) -> CurveDescriptor:
    """Decide whether 𝕏 is commutative, and describe k(𝕏)."""
    if isinstance(bimodule, Algebra):
        bimodule = OneFour(bimodule)
    if isinstance(bimodule, TwoTwo):
        n = bimodule.degree
        if bimodule.simple:
            raise UnknownVerdict("simple (2,2)-bimodules over infinite fields are not classified")
        if n == 1:
            return CurveDescriptor("Kronecker", 1, True, 1, kronecker_function_field(), True, "k[X,Y]", "Kronecker bimodule")
        return CurveDescriptor(
            f"(2,2) over [K:k] = {n}", 1, False, n, skew_function_field(n), False, "K[X;Y,alpha]", "skew polynomial ring, centre k[X,Y^n]"
        )
    alg = bimodule.algebra
    label = f"(1,4) {alg.kind}"
    if alg.kind == "quaternion":
        check = is_division_algebra(alg)
        if check.is_division is None:
            raise UnknownVerdict(f"division test inconclusive: {check.reason}")
        if not check.is_division:
            raise UnsupportedShape(f"not a division algebra: {check.reason}")
        form, ff = _quaternion_forms(alg)
        return CurveDescriptor(label, 2, True, 1, ff, True, form, "quaternion division algebra")
    prim = primitive_element_exists(alg)
    if prim.exists is None:
        raise UnknownVerdict(prim.reason)
    try:
        variant = LadderVariant.from_algebra(alg)
    except UnsupportedShape:
        variant = None
    if not prim.exists:
        if variant is None:
            raise UnsupportedShape("biquadratic towers are expected with x^2 = c0 and y^2 = a0")
        ff = function_field_presentation(variant)
        conic = presentation_for(variant).relations_text()[-1]
        return CurveDescriptor(label, 2, True, 1, ff, False, f"k[X,Y,Z]/({conic})", "biquadratic, no primitive element")
    if variant is not None:
        ff = function_field_presentation(variant)
        rel = presentation_for(variant).relations_text()
        return CurveDescriptor(label, 2, False, ff.s, ff, False, "k<X,Y,Z>/(" + ", ".join(rel) + ")", "primitive element exists")
    ff = FunctionFieldPresentation("not computed for this tower shape", False, "degree 4 over its centre", 2)
    return CurveDescriptor(label, 2, False, 2, ff, False, "", "primitive element exists")


# -- efficient tubular shifts --------------------------------------------------------


@dataclass
class EfficientShiftResult:
    verdict: str  # "Yes" | "No" | "Unknown"
    witness: str = ""
    f: int | None = None
    e: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "f": self.f, "e": self.e, "reason": self.reason}


def _lemma_witness(alg: Algebra, z) -> EfficientShiftResult | None:
    bim = OneFour(alg)
    try:
        data = index_multiplicity(simple_regular(z, bim))
    except (ElementInBase, NonIntegralInvariant):
        return None
    if data.is_unirational:
        return EfficientShiftResult("Yes", f"S for lambda = {alg.format(alg(z))}", data.f, data.e, "unirational point from a quadratic subfield")
    return None


def has_efficient_tubular_shift(curve, search_bound: int = DEFAULT_SEARCH_BOUND, seed: int = 0) -> EfficientShiftResult:
    curve = _as_curve(curve)
    bim = curve.bimodule
    k = curve.base
    if isinstance(bim, TwoTwo):
        if not bim.simple:
            return EfficientShiftResult("Yes", "X", 1, 1, "non-simple (2,2)-bimodule: X is central of degree one")
        return EfficientShiftResult("Unknown", reason="no witness search for simple (2,2)-bimodules")
    alg = curve.algebra
    candidates: list = []
    if alg.kind == "tower" and alg.is_commutative:
        candidates += [q.generator for q in intermediate_quadratic_fields(alg)]
    candidates += [alg.x, alg.y, alg.x * alg.y]
    for z in candidates:
        res = _lemma_witness(alg, z)
        if res is not None:
            return res
    if k.is_finite:
        try:
            for p in enumerate_points(curve, min(curve.max_degree, 2), seed):
                if p.is_unirational:
                    return EfficientShiftResult("Yes", format_poly(k, p.prime), p.f, p.e, "unirational point")
        except TameCurveError:
            pass
    rng = random.Random(seed)
    for _ in range(search_bound):
        res = _lemma_witness(alg, alg.random_element(rng))
        if res is not None:
            return res
    return EfficientShiftResult("Unknown", reason=f"no unirational simple regular among {search_bound} candidates")
