"""Representations of the bimodule algebra for M = kF_F.

A representation is a k-linear map k^m ⊗ F -> F^n, recorded as an n×m
matrix C over F with v ⊗ f ↦ C·v·f.  A morphism (A, B) has A over k
(m'×m) and B over F (n'×n) with B·C = C'·A.  Everything reduces to
k-linear algebra by expanding F-entries in the basis (1, x, y, xy).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any

from .algebras import Algebra, AlgebraElem, _has_root_in_base
from .errors import ElementInBase, Inconsistent, NonIntegralInvariant
from .linalg import Echelon, Matrix, rank, solve_linear

EPSILON_ONE_FOUR = 2


@dataclass(frozen=True)
class OneFour:
    """The (1,4)-bimodule kF_F for a 4-dimensional algebra F."""

    algebra: Algebra
    epsilon: int = EPSILON_ONE_FOUR

    @property
    def base(self):
        return self.algebra.base


@dataclass(frozen=True)
class TwoTwo:
    """A (2,2)-bimodule with centre k.

    For finite k this is kK_K ⊕ kK_{K^α} with [K:k] = n (n = 1 is the
    Kronecker bimodule).  ``simple`` marks a simple bimodule over an
    infinite field, recorded by ``label`` only.  Only the orbit-algebra
    level is implemented for this shape.
    """

    base: Any
    degree: int
    epsilon: int = 1
    simple: bool = False
    label: str = ""


class Rep:
    __slots__ = ("bimodule", "m", "n", "C")

    def __init__(self, bimodule: OneFour, C: Matrix, m: int | None = None):
        self.bimodule = bimodule
        self.C = C
        self.n = C.nrows
        self.m = C.ncols if m is None else m
        if C.ncols != self.m:
            raise ValueError("structure matrix has the wrong number of columns")

    @property
    def algebra(self) -> Algebra:
        return self.bimodule.algebra

    @property
    def dimension_vector(self) -> tuple[int, int]:
        return (self.m, self.n)

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0

    def to_json(self) -> dict:
        fmt = self.algebra.base.format
        return {
            "m": self.m,
            "n": self.n,
            "C": [[[fmt(c) for c in e.c] for e in row] for row in self.C.rows],
        }

    @classmethod
    def from_json(cls, bimodule: OneFour, data: dict) -> "Rep":
        alg = bimodule.algebra
        parse = alg.base.parse
        rows = [[alg.elem([parse(str(c)) for c in e]) for e in row] for row in data["C"]]
        return cls(bimodule, Matrix(rows, alg.zero, data["m"]), data["m"])

    def __repr__(self):
        return f"Rep(m={self.m}, n={self.n}, C={self.C})"


class Morphism:
    __slots__ = ("source", "target", "A", "B")

    def __init__(self, source: Rep, target: Rep, A: Matrix, B: Matrix, check: bool = True):
        self.source, self.target, self.A, self.B = source, target, A, B
        if A.shape != (target.m, source.m) or B.shape != (target.n, source.n):
            raise ValueError("morphism matrices have the wrong shape")
        if check and not self.is_valid():
            raise ValueError("commuting square B·C = C'·A fails")

    def is_valid(self) -> bool:
        alg = self.source.algebra
        lhs = self.B @ self.source.C
        rhs = self.target.C @ embed(self.A, alg)
        return lhs == rhs

    def compose(self, other: "Morphism") -> "Morphism":
        """self ∘ other."""
        return Morphism(other.source, self.target, self.A @ other.A, self.B @ other.B, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        return Morphism(self.source, self.target, self.A + other.A, self.B + other.B, check=False)

    def __sub__(self, other):
        return Morphism(self.source, self.target, self.A - other.A, self.B - other.B, check=False)

    def __neg__(self):
        return Morphism(self.source, self.target, -self.A, -self.B, check=False)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.A.scale(c), self.B.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def coordinates(self) -> list:
        """Flat k-coordinates: A entries, then B entries in (1, x, y, xy)."""
        out = [a for r in self.A.rows for a in r]
        for r in self.B.rows:
            for e in r:
                out.extend(e.c)
        return out

    def to_json(self) -> dict:
        fmt = self.source.algebra.base.format
        return {
            "A": [[fmt(a) for a in r] for r in self.A.rows],
            "B": [[[fmt(c) for c in e.c] for e in r] for r in self.B.rows],
        }

    def __repr__(self):
        return f"Morphism(A={self.A}, B={self.B})"


def embed(A: Matrix, alg: Algebra) -> Matrix:
    """View a k-matrix as a matrix over F."""
    return Matrix([[alg.scalar(a) for a in r] for r in A.rows], alg.zero, A.ncols)


def identity_morphism(P: Rep) -> Morphism:
    k = P.algebra.base
    alg = P.algebra
    return Morphism(P, P, Matrix.identity(P.m, k.zero, k.one), Matrix.identity(P.n, alg.zero, alg.one), check=False)


def zero_morphism(P: Rep, Q: Rep) -> Morphism:
    k = P.algebra.base
    return Morphism(P, Q, Matrix.zeros(Q.m, P.m, k.zero), Matrix.zeros(Q.n, P.n, P.algebra.zero), check=False)


def _product_table(alg: Algebra, entries) -> dict:
    """e_t * c for every basis element e_t and each distinct entry c."""
    table = {}
    for c in entries:
        if c.c not in table:
            table[c.c] = [(e * c).c for e in alg.basis]
    return table


def hom_basis(P: Rep, Q: Rep, basis_order: tuple[int, ...] = (0, 1, 2, 3)) -> list[Morphism]:
    """A k-basis of Hom(P, Q).

    ``basis_order`` permutes the F-basis used for the unknown B entries;
    the resulting dimension does not depend on it.
    """
    alg = P.algebra
    k = alg.base
    m, n, m2, n2 = P.m, P.n, Q.m, Q.n
    nA = m2 * m
    nvars = nA + n2 * n * 4
    products = _product_table(alg, [c for r in P.C.rows for c in r])
    basis = [alg.basis[i] for i in basis_order]
    if tuple(basis_order) != (0, 1, 2, 3):
        products = {key: [(b * alg.elem(key)).c for b in basis] for key in products}
    rows = []
    for i in range(n2):
        for j in range(m):
            eq = [dict() for _ in range(4)]
            # sum_l B_il C_lj
            for l in range(n):
                c = P.C.rows[l][j]
                if not c:
                    continue
                prods = products[c.c]
                for t in range(4):
                    var = nA + (i * n + l) * 4 + t
                    for s, v in enumerate(prods[t]):
                        if v:
                            eq[s][var] = eq[s].get(var, k.zero) + v
            # - sum_p C'_ip A_pj
            for p in range(m2):
                c = Q.C.rows[i][p]
                if not c:
                    continue
                var = p * m + j
                for s, v in enumerate(c.c):
                    if v:
                        eq[s][var] = eq[s].get(var, k.zero) - v
            rows.extend({a: b for a, b in e.items() if b} for e in eq)
    ech = Echelon(nvars)
    for r in rows:
        ech.add(r)
    from .linalg import kernel_sparse

    kernel = kernel_sparse(list(ech.pivots.values()), nvars, k)
    out = []
    for vec in kernel:
        A = Matrix([[vec[p * m + j] for j in range(m)] for p in range(m2)], k.zero, m)
        B = Matrix(
            [
                [_combine(alg, basis, vec[nA + (i * n + l) * 4 : nA + (i * n + l) * 4 + 4]) for l in range(n)]
                for i in range(n2)
            ],
            alg.zero,
            n,
        )
        out.append(Morphism(P, Q, A, B, check=False))
    return out


def _combine(alg, basis, coeffs) -> AlgebraElem:
    acc = alg.zero
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b * c
    return acc


def hom_dimension(P: Rep, Q: Rep) -> int:
    return len(hom_basis(P, Q))


def coordinates_in(phi: Morphism, basis: list[Morphism], field) -> list:
    """Coordinates of phi in a list of morphisms (raises Inconsistent if outside the span)."""
    vecs = [b.coordinates() for b in basis]
    target = phi.coordinates()
    cols = len(vecs)
    A = [[vecs[j][i] for j in range(cols)] for i in range(len(target))]
    if cols == 0:
        if any(target):
            raise Inconsistent("morphism is not in the span of an empty basis")
        return []
    sol, _ = solve_linear(A, target, field)
    return sol


def in_span(phi: Morphism, basis: list[Morphism], field) -> bool:
    try:
        coordinates_in(phi, basis, field)
        return True
    except Inconsistent:
        return False


# -- F-linear algebra via k-coordinates ---------------------------------------


def _flatten(vec) -> list:
    out = []
    for e in vec:
        out.extend(e.c)
    return out


def _unflatten(alg: Algebra, flat) -> list:
    return [alg.elem(flat[4 * i : 4 * i + 4]) for i in range(len(flat) // 4)]


def _f_matrix_as_k(B: Matrix, alg: Algebra) -> list[list]:
    """k-matrix (4n' × 4n) of the right F-linear map v ↦ B·v."""
    n2, n = B.shape
    cols = []
    for l in range(n):
        for e in alg.basis:
            cols.append(_flatten([B.rows[i][l] * e for i in range(n2)]))
    return [[cols[j][i] for j in range(len(cols))] for i in range(4 * n2)]


def _f_basis(alg: Algebra, vectors, length: int) -> list:
    """Greedy F-basis of the right F-span of the given F-vectors."""
    ech = Echelon(4 * length)
    chosen = []
    for v in vectors:
        flat = {i: a for i, a in enumerate(_flatten(v)) if a}
        if ech.contains(flat):
            continue
        chosen.append(list(v))
        for e in alg.basis:
            ech.add({i: a for i, a in enumerate(_flatten([c * e for c in v])) if a})
    return chosen


def _f_complement(alg: Algebra, basis: list, length: int) -> list[int]:
    """Indices of standard vectors completing an F-basis of F^length."""
    ech = Echelon(4 * length)
    for v in basis:
        for e in alg.basis:
            ech.add({i: a for i, a in enumerate(_flatten([c * e for c in v])) if a})
    extra = []
    for idx in range(length):
        if ech.contains({4 * idx: alg.base.one}):
            continue
        extra.append(idx)
        for t in range(4):
            v = [alg.zero] * length
            v[idx] = alg.basis[t]
            ech.add({i: a for i, a in enumerate(_flatten(v)) if a})
    return extra


def f_solve(T: Matrix, R: Matrix, alg: Algebra) -> Matrix:
    """A matrix W over F with T·W = R (raises Inconsistent)."""
    k = alg.base
    K = _f_matrix_as_k(T, alg)
    cols = []
    for l in range(R.ncols):
        rhs = _flatten(R.column(l))
        sol, _ = solve_linear(K, rhs, k) if K else ([], [])
        cols.append(_unflatten(alg, sol))
    b = T.ncols
    return Matrix([[cols[l][j] for l in range(R.ncols)] for j in range(b)], alg.zero, R.ncols)


def f_rank(B: Matrix, alg: Algebra) -> int:
    """Rank of an F-matrix (F a division algebra): k-rank divided by 4."""
    if B.nrows == 0 or B.ncols == 0:
        return 0
    return rank(_f_matrix_as_k(B, alg)) // 4


def _k_complement(vectors, length: int, field) -> list[int]:
    ech = Echelon(length)
    for v in vectors:
        ech.add({i: a for i, a in enumerate(v) if a})
    extra = []
    for idx in range(length):
        if ech.add({idx: field.one}):
            extra.append(idx)
    return extra


def _k_basis(vectors, length) -> list:
    ech = Echelon(length)
    out = []
    for v in vectors:
        if ech.add({i: a for i, a in enumerate(v) if a}):
            out.append(list(v))
    return out


def _k_inverse_rows(cols: list, field) -> list[list]:
    """Inverse of the square matrix with the given columns, as rows."""
    n = len(cols)
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    inv_cols = []
    for j in range(n):
        e = [field.one if i == j else field.zero for i in range(n)]
        x, _ = solve_linear(M, e, field)
        inv_cols.append(x)
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


@dataclass
class KernelCokernel:
    kernel: Rep
    inclusion: Morphism
    cokernel: Rep
    projection: Morphism
    image_dims: tuple[int, int]

    def exactness(self, phi: Morphism) -> dict:
        s, t = phi.source, phi.target
        return {
            "source": s.dimension_vector,
            "target": t.dimension_vector,
            "kernel": self.kernel.dimension_vector,
            "cokernel": self.cokernel.dimension_vector,
            "image": self.image_dims,
            "source_balanced": (self.kernel.m + self.image_dims[0], self.kernel.n + self.image_dims[1]) == s.dimension_vector,
            "target_balanced": (self.cokernel.m + self.image_dims[0], self.cokernel.n + self.image_dims[1])
            == t.dimension_vector,
        }


def kernel_cokernel(phi: Morphism) -> KernelCokernel:
    P, Q = phi.source, phi.target
    bim = P.bimodule
    alg = P.algebra
    k = alg.base
    # kernel
    kA = solve_linear(phi.A, field=k) if P.m else []
    flat_kB = solve_linear(_f_matrix_as_k(phi.B, alg), field=k) if P.n and Q.n else (
        [[k.one if i == j else k.zero for i in range(4 * P.n)] for j in range(4 * P.n)]
    )
    kB = _f_basis(alg, [_unflatten(alg, v) for v in flat_kB], P.n)
    KA = Matrix([[v[i] for v in kA] for i in range(P.m)], k.zero, len(kA))
    KB = Matrix([[v[i] for v in kB] for i in range(P.n)], alg.zero, len(kB))
    CK = P.C @ embed(KA, alg)
    C_ker = f_solve(KB, CK, alg) if len(kB) else Matrix.zeros(0, len(kA), alg.zero)
    kernel = Rep(bim, C_ker, len(kA))
    inclusion = Morphism(kernel, P, KA, KB)
    # cokernel on the k side
    imA = _k_basis([phi.A.column(j) for j in range(P.m)], Q.m)
    extraA = _k_complement(imA, Q.m, k)
    colsA = imA + [[k.one if i == idx else k.zero for i in range(Q.m)] for idx in extraA]
    invA = _k_inverse_rows(colsA, k) if colsA else []
    r = len(extraA)
    pA = Matrix(invA[len(imA) :], k.zero, Q.m)
    sA = Matrix([[k.one if i == idx else k.zero for idx in extraA] for i in range(Q.m)], k.zero, r)
    # cokernel on the F side
    imB = _f_basis(alg, [phi.B.column(j) for j in range(P.n)], Q.n)
    extraB = _f_complement(alg, imB, Q.n)
    colsB = imB + [[alg.one if i == idx else alg.zero for i in range(Q.n)] for idx in extraB]
    s = len(extraB)
    if colsB:
        T = Matrix([[colsB[j][i] for j in range(Q.n)] for i in range(Q.n)], alg.zero, Q.n)
        Tinv = f_solve(T, Matrix.identity(Q.n, alg.zero, alg.one), alg)
        pB = Matrix(Tinv.rows[len(imB) :], alg.zero, Q.n)
    else:
        pB = Matrix.zeros(0, Q.n, alg.zero)
    C_cok = pB @ Q.C @ embed(sA, alg)
    if s == 0:
        C_cok = Matrix.zeros(0, r, alg.zero)
    cokernel = Rep(bim, C_cok, r)
    projection = Morphism(Q, cokernel, pA, pB)
    return KernelCokernel(kernel, inclusion, cokernel, projection, (len(imA), len(imB)))


def is_isomorphism(phi: Morphism) -> bool:
    P, Q = phi.source, phi.target
    if P.dimension_vector != Q.dimension_vector:
        return False
    alg = P.algebra
    return rank(phi.A) == P.m and f_rank(phi.B, alg) == P.n


def find_isomorphism(P: Rep, Q: Rep, seed: int = 0, tries: int = 200) -> Morphism | None:
    """An isomorphism P -> Q from random combinations of a Hom basis, or None."""
    if P.dimension_vector != Q.dimension_vector:
        return None
    basis = hom_basis(P, Q)
    if not basis:
        return None if not P.is_zero() else zero_morphism(P, Q)
    for phi in basis:
        if is_isomorphism(phi):
            return phi
    k = P.algebra.base
    rng = random.Random(seed)
    for _ in range(tries):
        acc = basis[0].scale(k.zero)
        for b in basis:
            acc = acc + b.scale(_random_scalar(k, rng))
        if is_isomorphism(acc):
            return acc
    return None


def _random_scalar(k, rng):
    if k.is_finite:
        return k.random_element(rng)
    return k(rng.randint(-5, 5))


def is_isomorphic(P: Rep, Q: Rep) -> bool:
    return find_isomorphism(P, Q) is not None


# -- standard objects -------------------------------------------------------------


def structure_sheaf(bimodule: OneFour) -> Rep:
    """L = P₁ = (k ⊗ F -> F) with C = (1)."""
    alg = bimodule.algebra
    return Rep(bimodule, Matrix([[alg.one]], alg.zero, 1), 1)


def simple_regular(lam, bimodule: OneFour) -> Rep:
    """S_λ = (k² ⊗ F -> F) with C = (1, λ)."""
    alg = bimodule.algebra
    lam = alg(lam)
    if lam.in_base():
        raise ElementInBase(f"{lam} lies in the base field")
    return Rep(bimodule, Matrix([[alg.one, lam]], alg.zero, 2), 2)


# -- endomorphism rings ------------------------------------------------------------


@dataclass
class EndRing:
    basis: list
    table: dict  # (i, j) -> coordinates of basis[i] ∘ basis[j]
    dimension: int
    is_commutative: bool
    centre_dimension: int
    description: str
    generator: Morphism | None = None
    min_poly: tuple | None = None  # (alpha, beta) with g² = alpha·g + beta

    def to_json(self, field) -> dict:
        fmt = field.format
        return {
            "dimension": self.dimension,
            "commutative": self.is_commutative,
            "centre_dimension": self.centre_dimension,
            "description": self.description,
            "table": {f"{i},{j}": [fmt(c) for c in v] for (i, j), v in self.table.items()},
        }


def end_ring(P: Rep) -> EndRing:
    basis = hom_basis(P, P)
    k = P.algebra.base
    d = len(basis)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            table[i, j] = coordinates_in(a @ b, basis, k)
    comm = all(table[i, j] == table[j, i] for i in range(d) for j in range(d))
    centre = _centre_dimension(table, d, k)
    desc = f"dimension {d}"
    gen = mp = None
    if d == 1:
        desc = "k"
    elif d == 2:
        ident = identity_morphism(P)
        gen = next(b for b in basis if not in_span(b, [ident], k))
        # g² = α g + β·id
        sol = coordinates_in(gen @ gen, [gen, ident], k)
        mp = (sol[0], sol[1])
        from .orbit import _fmt_terms

        poly = _fmt_terms(k, [(k.one, "t^2"), (-mp[0], "t"), (-mp[1], "")])
        if _has_root_in_base(k, -mp[0], -mp[1]):
            desc = f"split quadratic algebra k[t]/({poly})"
        else:
            desc = f"quadratic field k[t]/({poly})"
    return EndRing(basis, table, d, comm, centre, desc, gen, mp)


def _centre_dimension(table, d, k) -> int:
    if d == 0:
        return 0
    rows = []
    for j in range(d):
        # sum_i z_i (b_i b_j - b_j b_i) = 0
        for s in range(d):
            rows.append({i: table[i, j][s] - table[j, i][s] for i in range(d) if table[i, j][s] - table[j, i][s]})
    return len(solve_linear([[r.get(i, k.zero) for i in range(d)] for r in rows], field=k))


def endomorphism_from_B(S: Rep, b) -> Morphism | None:
    """The endomorphism of S whose F-part is the 1×1 matrix (b), if any."""
    alg = S.algebra
    b = alg(b)
    basis = hom_basis(S, S)
    k = alg.base
    cols = [list(phi.B.rows[0][0].c) for phi in basis]
    A = [[cols[j][i] for j in range(len(basis))] for i in range(4)]
    try:
        sol, _ = solve_linear(A, list(b.c), k)
    except Inconsistent:
        return None
    acc = basis[0].scale(k.zero)
    for phi, c in zip(basis, sol):
        acc = acc + phi.scale(c)
    return acc


# -- invariants ----------------------------------------------------------------


@dataclass(frozen=True)
class PointData:
    S: Rep
    f: int
    e: int
    hom_dim: int
    end_dim: int
    end_ring: EndRing

    @property
    def is_unirational(self) -> bool:
        return self.f == 1 and self.e == 1


def index_multiplicity(S: Rep, L: Rep | None = None) -> PointData:
    """Index f = dim Hom(L,S)/ε and multiplicity e = dim Hom(L,S)/dim End(S)."""
    bim = S.bimodule
    if L is None:
        L = structure_sheaf(bim)
    h = hom_dimension(L, S)
    E = end_ring(S)
    eps = bim.epsilon
    if h == 0 or E.dimension == 0 or h % eps or h % E.dimension:
        raise NonIntegralInvariant(f"dim Hom(L,S) = {h}, dim End(S) = {E.dimension}, epsilon = {eps}")
    return PointData(S, h // eps, h // E.dimension, h, E.dimension, E)


def euler_form(x: tuple[int, int], y: tuple[int, int], dim_f: int = 4) -> int:
    """⟨x, y⟩ = dim Hom - dim Ext for dimension vectors (m, n)."""
    return x[0] * y[0] + dim_f * x[1] * y[1] - dim_f * x[0] * y[1]


NULL_ROOT = (2, 1)


def defect_rank(P: Rep) -> tuple[int, int]:
    """(defect, rank), normalized so that L has (-1, 1) and S_x has (0, 0)."""
    raw = euler_form(NULL_ROOT, P.dimension_vector)
    norm = -euler_form(NULL_ROOT, (1, 1))
    defect = raw // norm
    rank_ = 2 * P.n - P.m
    return defect, rank_


def hom_basis_permuted_dimension(P: Rep, Q: Rep) -> set[int]:
    """Hom dimensions for every permutation of the F-basis (should be one value)."""
    return {len(hom_basis(P, Q, perm)) for perm in itertools.permutations(range(4))}
