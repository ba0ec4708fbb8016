"""Graded automorphisms, the ghost group Aut₀(R)/Inn̄(R), and τ⁻.

Automorphisms of a presentation on X, Y, Z are 3×3 matrices whose
columns are the images of the generators.  Over a finite field they are
enumerated exhaustively; over ℚ the candidates are the signed monomial
matrices.  Aut₀ is cut out by the prime ideals of the centre, and Inn̄
consists of the scalar twists (R₀ = k).

τ⁻ is computed as the Coxeter functor: a k-linear reflection followed by
an F-linear one, using the pairing (g, f) ↦ t(g·f) with t the
coefficient of 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Hashable

from .algebras import Algebra
from .curve import centre_primes
from .errors import IncompletePrimeData, NoMatch, NotDefined, SearchSpaceTooLarge, UnsupportedShape
from .fields import PrimeField, RationalField
from .ladder import Ladder
from .linalg import Matrix, inverse, solve_linear
from .orbit import GradedPresentation, SkewPolyAlgebra, format_poly, relation_kernel, word_key
from .reps import (
    Morphism,
    Rep,
    _f_basis,
    _f_complement,
    _f_matrix_as_k,
    _flatten,
    _k_basis,
    _k_complement,
    _k_inverse_rows,
    coordinates_in,
    defect_rank,
    embed,
    f_solve,
    find_isomorphism,
)

SEARCH_BOUND = 1_000_000
GENERATORS = "XYZ"


# -- automorphisms of X, Y, Z presentations -------------------------------------------


@dataclass(frozen=True)
class GradedAutomorphism:
    matrix: Matrix  # column j = image of generator j in the basis X, Y, Z

    def images(self) -> dict[str, dict]:
        M = self.matrix
        return {g: {h: M.rows[i][j] for i, h in enumerate(GENERATORS) if M.rows[i][j]} for j, g in enumerate(GENERATORS)}

    def apply(self, pres: GradedPresentation, poly: dict) -> dict:
        return pres.substitute(self.images(), poly)

    def compose(self, other: "GradedAutomorphism") -> "GradedAutomorphism":
        """self ∘ other."""
        return GradedAutomorphism(self.matrix @ other.matrix)

    def format(self, field) -> str:
        imgs = self.images()
        return "(X,Y,Z) -> (" + ", ".join(format_poly(field, imgs[g]) for g in GENERATORS) + ")"


def _matrix(field, cols) -> Matrix:
    return Matrix([[cols[j][i] for j in range(3)] for i in range(3)], field.zero, 3)


def automorphism(field, x: dict, y: dict, z: dict) -> GradedAutomorphism:
    """Automorphism from the images of X, Y, Z given as {letter: coefficient}."""
    cols = [[img.get(h, field.zero) for h in GENERATORS] for img in (x, y, z)]
    return GradedAutomorphism(_matrix(field, [[field(c) for c in col] for col in cols]))


def _relation_tensor(pres: GradedPresentation):
    """NF(gh) in the basis of R_2 for each pair of generators, plus that basis."""
    basis2 = pres.basis(2)
    one = pres.field.one
    table = {}
    for a, b in itertools.product(GENERATORS, repeat=2):
        nf = pres.normal_form({a + b: one})
        table[a, b] = [nf.get(w, pres.field.zero) for w in basis2]
    return table, basis2


def _candidates(pres: GradedPresentation) -> tuple[list[list[list]], int]:
    """Column lists for all candidate matrices, and their number."""
    k = pres.field
    elems = list(k.elements())
    nonzero = [c for c in elems if c]
    centre1 = pres.centre_basis(1)
    x_central = not pres.is_commutative() and len(centre1) == 1 and set(centre1[0]) == {"X"}
    if x_central:
        # the degree-1 centre is kX, so X ↦ uX
        count = len(nonzero) * len(elems) ** 6
        xs = [[u, k.zero, k.zero] for u in nonzero]
    else:
        count = len(elems) ** 9
        xs = [list(v) for v in itertools.product(elems, repeat=3)]
    return xs, count


def _preserves(pres: GradedPresentation, table, cols) -> bool:
    k = pres.field
    for rel in pres.relations:
        acc = None
        for w, c in rel.items():
            i, j = GENERATORS.index(w[0]), GENERATORS.index(w[1])
            for a in range(3):
                ca = cols[i][a]
                if not ca:
                    continue
                for b in range(3):
                    cb = cols[j][b]
                    if not cb:
                        continue
                    s = c * ca * cb
                    vec = table[GENERATORS[a], GENERATORS[b]]
                    acc = [s * v for v in vec] if acc is None else [x + s * v for x, v in zip(acc, vec)]
        if acc is not None and any(acc):
            return False
    return True


def _enumerate_prime_field(pres: GradedPresentation, table, basis2, xs) -> list[list[list]]:
    import numpy as np

    k = pres.field
    p = k.characteristic
    T = np.zeros((3, 3, len(basis2)), dtype=np.int64)
    for (a, b), vec in table.items():
        T[GENERATORS.index(a), GENERATORS.index(b)] = [int(v) for v in vec]
    rels = []
    for rel in pres.relations:
        Rm = np.zeros((3, 3), dtype=np.int64)
        for w, c in rel.items():
            Rm[GENERATORS.index(w[0]), GENERATORS.index(w[1])] = int(c)
        rels.append(Rm)
    xs_arr = np.array([[int(c) for c in x] for x in xs], dtype=np.int64)
    yz = np.array(list(itertools.product(range(p), repeat=6)), dtype=np.int64).reshape(-1, 2, 3)
    found = []
    for x in xs_arr:
        cols = np.concatenate([np.broadcast_to(x, (len(yz), 1, 3)), yz], axis=1)  # (N, gen j, coord a)
        ok = np.ones(len(cols), dtype=bool)
        for Rm in rels:
            img = np.einsum("ij,nia,njb,abv->nv", Rm, cols, cols, T) % p
            ok &= ~img.any(axis=1)
        for c in cols[ok]:
            found.append([[k(int(v)) for v in col] for col in c])
    return found


def graded_automorphisms(pres: GradedPresentation, mode: str | None = None, bound: int = SEARCH_BOUND) -> list[GradedAutomorphism]:
    """All degree-preserving automorphisms (finite k), or the signed monomial ones (ℚ)."""
    k = pres.field
    if mode is None:
        mode = "exhaustive" if k.is_finite else "parameterized"
    table, basis2 = _relation_tensor(pres)
    if mode == "parameterized":
        if not isinstance(k, RationalField):
            raise UnsupportedShape("parameterized search is documented for ℚ only")
        cands = []
        for perm in itertools.permutations(range(3)):
            for signs in itertools.product((1, -1), repeat=3):
                cols = [[k.zero] * 3 for _ in range(3)]
                for j in range(3):
                    cols[j][perm[j]] = k(signs[j])
                cands.append(cols)
        found = [c for c in cands if _preserves(pres, table, c)]
    elif mode == "exhaustive":
        if not k.is_finite:
            raise UnsupportedShape("exhaustive search needs a finite base field")
        xs, count = _candidates(pres)
        if count > bound:
            raise SearchSpaceTooLarge(f"{count} candidate matrices exceed the bound {bound}")
        if isinstance(k, PrimeField):
            found = _enumerate_prime_field(pres, table, basis2, xs)
        else:
            elems = list(k.elements())
            found = []
            for x in xs:
                for rest in itertools.product(elems, repeat=6):
                    cols = [x, list(rest[:3]), list(rest[3:])]
                    if _preserves(pres, table, cols):
                        found.append(cols)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for cols in found:
        M = _matrix(k, cols)
        if inverse(M, k) is not None:
            out.append(GradedAutomorphism(M))
    return out


def scalar_twist(field, a) -> GradedAutomorphism:
    """φ_a: multiplication by aⁿ in degree n."""
    return GradedAutomorphism(Matrix.identity(3, field.zero, field.one).scale(field(a)))


# -- finite groups and quotients ----------------------------------------------------------


@dataclass
class QuotientGroup:
    order: int
    representatives: list
    element_orders: list[int]
    structure: str


def _element_order(g, compose, identity, in_sub: Callable[[Any], bool], limit: int = 10_000) -> int:
    acc, n = g, 1
    while not in_sub(acc):
        acc = compose(g, acc)
        n += 1
        if n > limit:
            raise ValueError("element order exceeds the limit")
    return n


def quotient(group: list, subgroup: list, compose: Callable, key: Callable[[Any], Hashable] = lambda g: g) -> QuotientGroup:
    """G/N for finite G and normal N given as element lists."""
    sub_keys = {key(h) for h in subgroup}
    seen: set = set()
    reps = []
    for g in group:
        if key(g) in seen:
            continue
        reps.append(g)
        for h in subgroup:
            seen.add(key(compose(g, h)))
    order = len(reps)
    identity = subgroup[0] if subgroup else None
    orders = [_element_order(g, compose, identity, lambda x: key(x) in sub_keys) for g in reps]
    if order == 1:
        structure = "trivial"
    elif order in orders:
        structure = f"cyclic {order}"
    elif order == 4:
        structure = "Klein four"
    else:
        structure = f"order {order}, exponent {max(orders)}"
    return QuotientGroup(order, reps, orders, structure)


def verify_group(elements: list, compose: Callable, key: Callable[[Any], Hashable] = lambda g: g) -> bool:
    """Closure under composition (inverses follow for finite sets)."""
    keys = {key(g) for g in elements}
    return all(key(compose(a, b)) in keys for a in elements for b in elements)


# -- ghost groups ------------------------------------------------------------------------------


@dataclass
class GhostGroupReport:
    order: int
    structure: str
    generators: list[str]
    representatives: list[str]
    aut_order: int
    aut0_order: int
    inner_order: int
    prime_test_set: list[str]
    curve_aut_order: int = 0  # |Aut(𝕏)| = |Aut(R)/Inn̄(R)|
    curve_aut_structure: str = ""
    automorphisms: list = dc_field(default_factory=list, repr=False)
    aut0: list = dc_field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "structure": self.structure,
            "generators": self.generators,
            "representatives": self.representatives,
            "aut_order": self.aut_order,
            "aut0_order": self.aut0_order,
            "inner_order": self.inner_order,
            "prime_test_set": self.prime_test_set,
            "curve_aut_order": self.curve_aut_order,
            "curve_aut_structure": self.curve_aut_structure,
        }


def prime_test_set(pres: GradedPresentation, max_degree: int = 4) -> list[dict]:
    """Homogeneous primes used to cut out Aut₀.

    Finite k: the primes of the centre k[X, Y²] up to max_degree (or the
    degree-1 forms when R is commutative).  ℚ: X, Y², Y² - cX² for small
    c, and for commutative R the linear forms X, Y, Z, X+Y, X+Z, Y+Z,
    X+Y+Z (on a conic without rational points each is prime).
    """
    k = pres.field
    one = k.one
    if pres.is_commutative():
        if k.is_finite:
            return [{w: c for w, c in zip(GENERATORS, v) if c} for v in _projective_points(k)]
        if isinstance(k, RationalField):
            forms = ["X", "Y", "Z", "XY", "XZ", "YZ", "XYZ"]
            return [{g: one for g in f} for f in forms]
        raise IncompletePrimeData("no prime list for commutative orbit algebras over this field")
    if k.is_finite:
        return [pres.normal_form(p) for _, p in centre_primes(k, max_degree)]
    if isinstance(k, RationalField):
        out = [{"X": one}, {"YY": one}]
        for c in (1, -1, 2, -2, 3, -3):
            out.append({"YY": one, "XX": k(-c)})
        return [pres.normal_form(p) for p in out]
    raise IncompletePrimeData("no certified prime list over this field")


def _projective_points(k) -> list[tuple]:
    pts = []
    for v in itertools.product(list(k.elements()), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == k.one:
            pts.append(v)
    return pts


def fixes_primes(pres: GradedPresentation, g: GradedAutomorphism, primes: list[dict]) -> bool:
    """g(π) ∈ k*·π for every test prime π (a prime of R is fixed iff its centre prime is)."""
    for p in primes:
        img = g.apply(pres, p)
        if pres.proportional(img, pres.normal_form(p)) is None:
            return False
    return True


def ghost_group(pres: GradedPresentation, automorphisms: list[GradedAutomorphism] | None = None, max_degree: int = 4) -> GhostGroupReport:
    k = pres.field
    auts = graded_automorphisms(pres) if automorphisms is None else automorphisms
    primes = prime_test_set(pres, max_degree)
    aut0 = [g for g in auts if fixes_primes(pres, g, primes)]
    keys = {g.matrix for g in auts}
    inner = [g for g in (scalar_twist(k, a) for a in _nonzero_scalars(k)) if g.matrix in keys]
    if not verify_group(auts, GradedAutomorphism.compose, lambda g: g.matrix):
        raise IncompletePrimeData("the automorphism candidates are not closed under composition")
    q = quotient(aut0, inner, GradedAutomorphism.compose, lambda g: g.matrix)
    full = quotient(auts, inner, GradedAutomorphism.compose, lambda g: g.matrix)
    gens = _generators(q, aut0, inner, GradedAutomorphism.compose, lambda g: g.matrix)
    return GhostGroupReport(
        q.order,
        q.structure,
        [g.format(k) for g in gens],
        [g.format(k) for g in q.representatives],
        len(auts),
        len(aut0),
        len(inner),
        [format_poly(k, p) for p in primes],
        full.order,
        full.structure,
        auts,
        aut0,
    )


def _nonzero_scalars(k):
    if k.is_finite:
        return [c for c in k.elements() if c]
    return [k(1), k(-1)]


def _generators(q: QuotientGroup, group: list, inner: list, compose: Callable, key: Callable) -> list:
    """A small generating set of G/N, chosen greedily by element order."""
    span = {key(h) for h in inner}
    elems = list(inner)
    gens: list = []
    ranked = sorted(zip(q.representatives, q.element_orders), key=lambda t: -t[1])
    for g, _ in ranked:
        if key(g) in span:
            continue
        gens.append(g)
        frontier = list(elems)
        while frontier:
            x = frontier.pop()
            for y in gens:
                z = compose(x, y)
                if key(z) not in span:
                    span.add(key(z))
                    elems.append(z)
                    frontier.append(z)
        if len(span) == len(group):
            break
    return gens


def equivalent_mod_inner(g: GradedAutomorphism, h: GradedAutomorphism, field) -> Any:
    """The scalar a with g = φ_a ∘ h, or None."""
    M, N = g.matrix, h.matrix
    a = None
    for i in range(3):
        for j in range(3):
            x, y = M.rows[i][j], N.rows[i][j]
            if bool(x) != bool(y):
                return None
            if y:
                r = x / y
                if a is None:
                    a = r
                elif r != a:
                    return None
    return a


# -- (2,2) skew polynomial rings -------------------------------------------------------------


@dataclass(frozen=True)
class SkewAutomorphism:
    """c ↦ β(c) with β = Frobenius^beta over k, X ↦ u·X, Y ↦ q·Y."""

    beta: int
    u: Any
    q: Any

    def compose(self, other: "SkewAutomorphism", ring: SkewPolyAlgebra) -> "SkewAutomorphism":
        """self ∘ other."""
        return SkewAutomorphism((self.beta + other.beta) % ring.n, self.u * other.u, self.field_map(ring, other.q) * self.q)

    def field_map(self, ring: SkewPolyAlgebra, c):
        return ring.alpha(c, self.beta)

    def apply(self, ring: SkewPolyAlgebra, a: dict) -> dict:
        out: dict = {}
        X = {(1, 0): ring.K(self.u)}
        Y = {(0, 1): self.q}
        for (i, j), c in a.items():
            term = {(0, 0): self.field_map(ring, c)}
            for _ in range(i):
                term = ring.multiply(term, X)
            for _ in range(j):
                term = ring.multiply(term, Y)
            for key, v in term.items():
                s = out.get(key, ring.K.zero) + v
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return dict(sorted(out.items()))

    def format(self, ring: SkewPolyAlgebra) -> str:
        K = ring.K
        b = "id" if self.beta == 0 else ("alpha" if self.beta == 1 else f"alpha^{self.beta}")
        return f"(c,X,Y) -> ({b}(c), {K.format(K(self.u))}X, ({K.format(self.q)})Y)"


def skew_automorphisms(ring: SkewPolyAlgebra) -> list[SkewAutomorphism]:
    """Graded automorphisms of K[X;Y,α] over k: Galois twist, X ↦ uX, Y ↦ qY.

    X spans the degree-1 centre, so its image is uX with u ∈ k*; an
    X-component in the image of Y is excluded by Y·c = α(c)·Y for n ≥ 2.
    Each candidate is verified on the defining relations.
    """
    K = ring.K
    k_star = [c for c in ring.fixed_field() if c]
    K_star = [c for c in K.elements() if c]
    gen = ring._field_generator()
    out = []
    for beta in range(ring.n):
        for u in k_star:
            for q in K_star:
                g = SkewAutomorphism(beta, u, q)
                Yc = ring.multiply(g.apply(ring, {(0, 1): K.one}), {(0, 0): g.field_map(ring, gen)})
                cY = g.apply(ring, ring.multiply({(0, 0): ring.alpha(gen)}, {(0, 1): K.one}))
                Xc = ring.multiply(g.apply(ring, {(1, 0): K.one}), {(0, 0): g.field_map(ring, gen)})
                cX = ring.multiply({(0, 0): g.field_map(ring, gen)}, g.apply(ring, {(1, 0): K.one}))
                if Yc == cY and Xc == cX:
                    out.append(g)
    return out


def skew_prime_test_set(ring: SkewPolyAlgebra) -> list[dict]:
    """X, Yⁿ and Yⁿ - c·Xⁿ for c ∈ k*: primes of the centre k[X, Yⁿ]."""
    K = ring.K
    n = ring.n
    out = [{(1, 0): K.one}, {(0, n): K.one}]
    for c in ring.fixed_field():
        if c:
            out.append({(n, 0): -c, (0, n): K.one})
    return out


def _skew_proportional(ring: SkewPolyAlgebra, a: dict, b: dict) -> bool:
    if set(a) != set(b):
        return False
    key = next(iter(b))
    lam = a[key] / b[key]
    return all(a[t] == lam * b[t] for t in b)


def skew_ghost_group(ring: SkewPolyAlgebra) -> GhostGroupReport:
    """𝒢 for K[X;Y,α]: Aut₀ fixes the centre primes; Inn̄ = scalar twists and conjugation by K*."""
    K = ring.K
    auts = skew_automorphisms(ring)
    primes = skew_prime_test_set(ring)
    aut0 = [g for g in auts if all(_skew_proportional(ring, g.apply(ring, p), p) for p in primes)]
    inner_set = set()
    for a in ring.fixed_field():
        if not a:
            continue
        for c in K.elements():
            if c:
                inner_set.add(SkewAutomorphism(0, a, a * c / ring.alpha(c)))
    inner = sorted(inner_set, key=lambda g: (str(g.u), str(g.q)))
    compose = lambda a, b: a.compose(b, ring)  # noqa: E731
    key = lambda g: (g.beta, g.u, g.q)  # noqa: E731
    q = quotient(aut0, inner, compose, key)
    full = quotient(auts, inner, compose, key)
    gens = _generators(q, aut0, inner, compose, key)
    return GhostGroupReport(
        q.order,
        q.structure,
        [g.format(ring) for g in gens],
        [g.format(ring) for g in q.representatives],
        len(auts),
        len(aut0),
        len(inner),
        [ring.format(p) for p in primes],
        full.order,
        full.structure,
        auts,
        aut0,
    )


# -- the Coxeter functor -------------------------------------------------------------------------


def _trace_gram(alg: Algebra):
    """Gram matrix t(b_u·b_s) of the pairing (g, f) ↦ coefficient of 1 in g·f."""
    return [[(bu * bs).c[0] for bs in alg.basis] for bu in alg.basis]


@dataclass
class CoxeterData:
    """τ⁻P together with the maps used to transport morphisms."""

    source: Rep
    image: Rep
    p: Matrix  # k-projection k^{4n} -> V'
    s: Matrix  # k-section V' -> k^{4n}
    Q: Matrix  # F-projection F^r -> W'
    S: Matrix  # F-section W' -> F^r


def coxeter_data(P: Rep) -> CoxeterData:
    alg = P.algebra
    k = alg.base
    m, n = P.dimension_vector
    # step 1: V' = coker(k^m -> F^n_k, v ↦ C·v)
    cols = [_flatten(P.C.column(j)) for j in range(m)]
    im = _k_basis(cols, 4 * n)
    if len(im) != m:
        raise NotDefined("τ⁻ is not defined: the representation has an injective summand")
    extra = _k_complement(im, 4 * n, k)
    basis_cols = im + [[k.one if i == idx else k.zero for i in range(4 * n)] for idx in extra]
    inv = _k_inverse_rows(basis_cols, k) if basis_cols else []
    r = len(extra)
    p = Matrix(inv[len(im) :], k.zero, 4 * n)
    s = Matrix([[k.one if i == idx else k.zero for idx in extra] for i in range(4 * n)], k.zero, r)
    # step 2: Ψ: F^n -> F^r with t(Ψ(w)_i·f) = p(w·f)_i
    gram = _trace_gram(alg)
    gram_t = [[gram[u][s_] for u in range(4)] for s_ in range(4)]
    G_rows = [[alg.zero] * n for _ in range(r)]
    for l in range(n):
        for i in range(r):
            rhs = [p.rows[i][4 * l + s_] for s_ in range(4)]
            gamma, ker = solve_linear(gram_t, rhs, k)
            if ker:
                raise NotDefined("the trace pairing on F is degenerate")
            G_rows[i][l] = alg.elem(gamma)
    G = Matrix(G_rows, alg.zero, n)
    imB = _f_basis(alg, [G.column(l) for l in range(n)], r)
    if len(imB) != n:
        raise NotDefined("τ⁻ is not defined: the representation has an injective summand")
    extraB = _f_complement(alg, imB, r)
    colsB = imB + [[alg.one if i == idx else alg.zero for i in range(r)] for idx in extraB]
    sdim = len(extraB)
    T = Matrix([[colsB[j][i] for j in range(r)] for i in range(r)], alg.zero, r)
    Tinv = f_solve(T, Matrix.identity(r, alg.zero, alg.one), alg) if r else T
    Q = Matrix(Tinv.rows[len(imB) :], alg.zero, r)
    S = Matrix([[alg.one if i == idx else alg.zero for idx in extraB] for i in range(r)], alg.zero, sdim)
    image = Rep(P.bimodule, Q if sdim else Matrix.zeros(0, r, alg.zero), r)
    return CoxeterData(P, image, p, s, Q, S)


def coxeter_tau_minus(P: Rep) -> Rep:
    """τ⁻P; dimension pairs follow (m, n) ↦ (4n - m, 3n - m)."""
    return coxeter_data(P).image


def coxeter_dimension(dim: tuple[int, int]) -> tuple[int, int]:
    m, n = dim
    return (4 * n - m, 3 * n - m)


def coxeter_morphism(phi: Morphism, src: CoxeterData | None = None, tgt: CoxeterData | None = None) -> Morphism:
    """τ⁻(φ) for φ: P -> P'."""
    alg = phi.source.algebra
    src = src or coxeter_data(phi.source)
    tgt = tgt or coxeter_data(phi.target)
    Bk = Matrix(_f_matrix_as_k(phi.B, alg), alg.base.zero, 4 * phi.source.n) if phi.B.nrows else Matrix.zeros(
        4 * phi.target.n, 4 * phi.source.n, alg.base.zero
    )
    A2 = tgt.p @ Bk @ src.s
    B2 = tgt.Q @ embed(A2, alg) @ src.S
    return Morphism(src.image, tgt.image, A2, B2)


def inverse_morphism(phi: Morphism) -> Morphism:
    alg = phi.source.algebra
    k = alg.base
    Ainv = inverse(phi.A, k) if phi.A.nrows else phi.A
    if Ainv is None:
        raise NotDefined("morphism is not invertible")
    Binv = f_solve(phi.B, Matrix.identity(phi.B.nrows, alg.zero, alg.one), alg) if phi.B.nrows else phi.B
    return Morphism(phi.target, phi.source, Ainv, Binv)


def preserves_defect(P: Rep) -> bool:
    return defect_rank(coxeter_tau_minus(P))[0] == defect_rank(P)[0]


# -- τ⁻ against the tubular shift ---------------------------------------------------------------


@dataclass
class TauComparison:
    matrix: Matrix  # σ_x⁻¹∘τ⁻ on Hom(L, L(1)) in the basis X_1, Y_1, Z_1 (columns = images)
    ghost: str
    scalar: Any
    relations: list[dict]
    field: Any

    def relations_text(self) -> list[str]:
        """Largest word first, scaled to leading coefficient 1."""
        out = []
        for r in self.relations:
            ordered = sorted(r.items(), key=lambda t: word_key(t[0]), reverse=True)
            inv = self.field.one / ordered[0][1]
            out.append(format_poly(self.field, {w: c * inv for w, c in ordered}))
        return out

    def to_json(self) -> dict:
        f = self.field.format
        return {
            "matrix": [[f(c) for c in row] for row in self.matrix.rows],
            "ghost": self.ghost,
            "scalar": f(self.scalar),
            "relations": self.relations_text(),
        }


def ghost_candidates(field) -> dict[str, GradedAutomorphism]:
    """1, γ*_y, γ*_z and γ*_yγ*_z as sign changes of the generators."""
    one = field.one
    return {
        "identity": automorphism(field, {"X": one}, {"Y": one}, {"Z": one}),
        "gamma_y": automorphism(field, {"X": one}, {"Y": -one}, {"Z": one}),
        "gamma_z": automorphism(field, {"X": one}, {"Y": one}, {"Z": -one}),
        "gamma_y gamma_z": automorphism(field, {"X": -one}, {"Y": one}, {"Z": one}),
    }


def _orbit_relations(ladder: Ladder, T: Callable[[str], Morphism]) -> list[dict]:
    gens = ladder.generators(1)
    return relation_kernel(ladder, 1, product=lambda n, w: T(w[0]) @ gens[w[1]])


def compare_tau_with_shift(ladder: Ladder, seed: int = 0) -> TauComparison:
    """σ_x⁻¹∘τ⁻ on Hom(L, L(1)), matched against the sign ghosts up to a scalar."""
    k = ladder.base
    P1, P2, P3 = ladder.P(1), ladder.P(2), ladder.P(3)
    d1, d2 = coxeter_data(P1), coxeter_data(P2)
    iota1 = find_isomorphism(d1.image, P2, seed)
    iota2 = find_isomorphism(d2.image, P3, seed)
    if iota1 is None or iota2 is None:
        raise NoMatch("τ⁻L or τ⁻L(1) is not isomorphic to the next ladder object")
    iota1_inv = inverse_morphism(iota1)
    basis = [ladder.generators(2)[g] for g in GENERATORS]
    cache: dict[str, Morphism] = {}

    def T(letter: str) -> Morphism:
        if letter not in cache:
            cache[letter] = iota2 @ coxeter_morphism(ladder.generators(1)[letter], d1, d2) @ iota1_inv
        return cache[letter]

    cols = [coordinates_in(T(g), basis, k) for g in GENERATORS]
    M = _matrix(k, cols)
    g = GradedAutomorphism(M)
    for name, cand in ghost_candidates(k).items():
        a = equivalent_mod_inner(g, cand, k)
        if a is not None:
            return TauComparison(M, name, a, _orbit_relations(ladder, T), k)
    raise NoMatch(f"σ_x⁻¹∘τ⁻ acts by {M!r}, which is no sign ghost up to scalar")
