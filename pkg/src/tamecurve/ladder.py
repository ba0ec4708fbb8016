"""The preprojective ladder P_1 -> P_2 -> ... with generators X_n, Y_n, Z_n.

P_n has m = 2n-1 and structure matrix C_n = [I_n | B_n], where B_n is
n×(n-1) with x on the diagonal and y on the subdiagonal.  X_n and Y_n
are the shifted identities.  Z_n is explicit for the commutative tower
and the sign-erased quaternion case; in the characteristic-2 quaternion
case it is solved for, one n at a time, from the defining relations.

Words such as "ZY" denote compositions Z_{n+1}∘Y_n: the rightmost letter
is applied first.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .algebras import Algebra, QuarticTowerSpec, QuaternionSpec
from .errors import ExactnessFailure, Inconsistent, UnsupportedShape
from .linalg import Matrix, solve_linear
from .reps import (
    Morphism,
    OneFour,
    Rep,
    find_isomorphism,
    hom_basis,
    kernel_cokernel,
    simple_regular,
)

COMM_EXT = "CommExt"
SKEW_EXT = "SkewExt"
QUAT_CHAR2 = "QuatChar2"


@dataclass(frozen=True)
class LadderVariant:
    kind: str
    c0: Any
    a0: Any
    a1: Any
    bimodule: OneFour

    @property
    def algebra(self) -> Algebra:
        return self.bimodule.algebra

    @property
    def base(self):
        return self.bimodule.algebra.base

    @classmethod
    def from_algebra(cls, alg: Algebra) -> "LadderVariant":
        s = alg.spec
        bim = OneFour(alg)
        k = alg.base
        if isinstance(s, QuarticTowerSpec):
            if s.c1 or s.d1:
                raise UnsupportedShape("ladder needs x^2 = c0 and y^2 = a0 + a1 x (c1 = d1 = 0)")
            return cls(COMM_EXT, s.c0, s.a0, s.a1, bim)
        if isinstance(s, QuaternionSpec):
            if s.variant == "charNot2":
                return cls(SKEW_EXT, s.a, s.b, k.zero, bim)
            return cls(QUAT_CHAR2, s.c0, s.a0, k.zero, bim)
        raise UnsupportedShape(f"no ladder for {s!r}")

    def relations(self) -> list[tuple[str, dict, dict]]:
        """Degree-2 relations as (name, lhs, rhs) with {word: coefficient}."""
        k = self.base
        one = k.one
        if self.kind == COMM_EXT:
            return [
                ("XY=YX", {"XY": one}, {"YX": one}),
                ("ZX=XZ", {"ZX": one}, {"XZ": one}),
                ("ZY=-YZ-a1XX", {"ZY": one}, {"YZ": -one, "XX": -self.a1}),
                ("ZZ=-c0YY+a0XX", {"ZZ": one}, {"YY": -self.c0, "XX": self.a0}),
            ]
        if self.kind == SKEW_EXT:
            return [
                ("XY=YX", {"XY": one}, {"YX": one}),
                ("ZX=XZ", {"ZX": one}, {"XZ": one}),
                ("ZY=YZ", {"ZY": one}, {"YZ": one}),
                ("ZZ=c0YY+a0XX", {"ZZ": one}, {"YY": self.c0, "XX": self.a0}),
            ]
        return [
            ("XY=YX", {"XY": one}, {"YX": one}),
            ("ZX=XZ", {"ZX": one}, {"XZ": one}),
            ("ZY=YZ", {"ZY": one}, {"YZ": one}),
            ("ZZ=c0YY+a0XX+YZ", {"ZZ": one}, {"YY": self.c0, "XX": self.a0, "YZ": one}),
        ]

    def describe(self) -> dict:
        f = self.base.format
        return {"kind": self.kind, "c0": f(self.c0), "a0": f(self.a0), "a1": f(self.a1)}


def build_P(n: int, variant: LadderVariant) -> Rep:
    if n < 1:
        raise ValueError("n must be positive")
    alg = variant.algebra
    rows = [[alg.zero] * (2 * n - 1) for _ in range(n)]
    for j in range(n):
        rows[j][j] = alg.one
    for j in range(n - 1):
        rows[j][n + j] = alg.x
        rows[j + 1][n + j] = alg.y
    return Rep(variant.bimodule, Matrix(rows, alg.zero, 2 * n - 1), 2 * n - 1)


def _shift_morphism(n: int, variant: LadderVariant, P: Rep, Q: Rep, shift: int) -> Morphism:
    alg, k = variant.algebra, variant.base
    A = [[k.zero] * (2 * n - 1) for _ in range(2 * n + 1)]
    for j in range(n):
        A[j + shift][j] = k.one
    for j in range(n - 1):
        A[n + 1 + j + shift][n + j] = k.one
    B = [[alg.zero] * n for _ in range(n + 1)]
    for j in range(n):
        B[j + shift][j] = alg.one
    return Morphism(P, Q, Matrix(A, k.zero, 2 * n - 1), Matrix(B, alg.zero, n))


def _explicit_Z(n: int, variant: LadderVariant, P: Rep, Q: Rep) -> Morphism:
    """Z_n for the commutative tower; with signs erased for SkewExt."""
    alg, k = variant.algebra, variant.base
    signed = variant.kind == COMM_EXT

    def sign(e: int) -> int:
        return (-1) ** e if signed else 1

    a1 = variant.a1
    c0p = variant.c0 * sign(n - 1)
    a0p = variant.a0 * sign(n)
    A = [[k.zero] * (2 * n - 1) for _ in range(2 * n + 1)]

    def put(i, j, v):  # 1-indexed
        A[i - 1][j - 1] = A[i - 1][j - 1] + v

    for j in range(1, n + 1):
        if (n - j) % 2 == 1 and j + 2 <= n + 1:
            put(j + 2, j, -a1)
        put(n + 1 + j, j, k(sign(n - j)))
    for j in range(1, n):
        put(j, n + j, c0p * sign(j - 1))
        if j + 2 <= n + 1:
            put(j + 2, n + j, a0p * sign(j - 1))
        if (n - j) % 2 == 0 and j + 2 <= n:
            put(n + 1 + j + 2, n + j, -a1)
    B = [[alg.zero] * n for _ in range(n + 1)]
    for j in range(1, n + 1):
        s = sign(n - j)
        B[j - 1][j - 1] = alg.x * s
        B[j][j - 1] = alg.y * s
        if s == -1 and j + 1 <= n:
            B[j + 1][j - 1] = alg.scalar(-a1)
    return Morphism(P, Q, Matrix(A, k.zero, 2 * n - 1), Matrix(B, alg.zero, n))


def _linear_combination(basis, coeffs, k):
    acc = basis[0].scale(k.zero)
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b.scale(c)
    return acc


def _solve_in_hom(basis: list[Morphism], conditions, k) -> tuple[Morphism, list]:
    """Find phi in span(basis) with op(phi) = rhs for each (op, rhs)."""
    rows, rhs = [], []
    for op, target in conditions:
        images = [op(b).coordinates() for b in basis]
        t = target.coordinates()
        for i in range(len(t)):
            rows.append([im[i] for im in images])
            rhs.append(t[i])
    sol, ker = solve_linear(rows, rhs, k)
    return _linear_combination(basis, sol, k), ker


class Ladder:
    """Cached P_n and (X_n, Y_n, Z_n), validated as they are built."""

    def __init__(self, variant: LadderVariant, validate: bool = True):
        self.variant = variant
        self.validate = validate
        self._P: dict[int, Rep] = {}
        self._gens: dict[int, dict[str, Morphism]] = {}
        self._hom: dict[tuple[int, int], list[Morphism]] = {}

    @classmethod
    def for_algebra(cls, alg: Algebra, validate: bool = True) -> "Ladder":
        return cls(LadderVariant.from_algebra(alg), validate)

    @property
    def base(self):
        return self.variant.base

    def P(self, n: int) -> Rep:
        if n not in self._P:
            self._P[n] = build_P(n, self.variant)
        return self._P[n]

    def generators(self, n: int) -> dict[str, Morphism]:
        if n not in self._gens:
            self._build(n)
        return self._gens[n]

    def X(self, n):
        return self.generators(n)["X"]

    def Y(self, n):
        return self.generators(n)["Y"]

    def Z(self, n):
        return self.generators(n)["Z"]

    def _build(self, n: int):
        v = self.variant
        P, Q = self.P(n), self.P(n + 1)
        X = _shift_morphism(n, v, P, Q, 1)
        Y = _shift_morphism(n, v, P, Q, 0)
        if v.kind in (COMM_EXT, SKEW_EXT) or n == 1:
            Z = _explicit_Z(n, v, P, Q)
        else:
            Z = self._solve_Z(n)
        gens = {"X": X, "Y": Y, "Z": Z}
        if self.validate:
            for name, g in gens.items():
                if not g.is_valid():
                    raise ExactnessFailure(f"{name}_{n} is not a morphism", {"n": n})
        self._gens[n] = gens

    def _solve_Z(self, n: int) -> Morphism:
        """Characteristic-2 quaternions: Z_n from Z_{n-1} via the relations."""
        k = self.base
        v = self.variant
        prev = self.generators(n - 1)
        X1, Y1 = (_shift_morphism(n, v, self.P(n), self.P(n + 1), s) for s in (1, 0))
        Xp, Yp, Zp = prev["X"], prev["Y"], prev["Z"]
        conds = [
            (lambda b: b @ Xp, X1 @ Zp),
            (lambda b: b @ Yp, Y1 @ Zp),
            (lambda b: b @ Zp, (Y1 @ Yp).scale(v.c0) + (X1 @ Xp).scale(v.a0) + Y1 @ Zp),
        ]
        try:
            Z, ker = _solve_in_hom(self.hom(n, 1), conds, k)
        except Inconsistent:
            raise ExactnessFailure(f"no Z_{n} satisfies the relations", {"n": n}) from None
        if ker:
            raise ExactnessFailure(f"Z_{n} is not determined by the relations", {"n": n})
        return Z

    def hom(self, n: int, t: int) -> list[Morphism]:
        key = (n, t)
        if key not in self._hom:
            self._hom[key] = hom_basis(self.P(n), self.P(n + t))
        return self._hom[key]

    def word(self, n: int, word: str) -> Morphism:
        """The composite P_n -> P_{n+len(word)}; the rightmost letter acts first."""
        if not word:
            from .reps import identity_morphism

            return identity_morphism(self.P(n))
        result = None
        for i, letter in enumerate(reversed(word)):
            g = self.generators(n + i)[letter]
            result = g if result is None else g @ result
        return result

    def combination(self, n: int, poly: dict) -> Morphism:
        """Evaluate {word: coefficient} (all words of one length) at P_n."""
        items = list(poly.items())
        acc = self.word(n, items[0][0]).scale(items[0][1])
        for w, c in items[1:]:
            acc = acc + self.word(n, w).scale(c)
        return acc

    def relation_holds(self, n: int, lhs: dict, rhs: dict) -> bool:
        return self.combination(n, lhs) == self.combination(n, rhs)

    def check_relations(self, n: int) -> dict[str, bool]:
        out = {name: self.relation_holds(n, lhs, rhs) for name, lhs, rhs in self.variant.relations()}
        if self.variant.kind == COMM_EXT:
            # the alternative reading X_{n+1}Z_n = Z_{n+1}Y_n, recorded for comparison
            one = self.base.one
            out["XZ=ZY (alternative reading)"] = self.relation_holds(n, {"XZ": one}, {"ZY": one})
        return out

    def dump(self, n: int) -> dict:
        g = self.generators(n)
        return {
            "n": n,
            "variant": self.variant.describe(),
            "P_n": self.P(n).to_json(),
            "P_n+1": self.P(n + 1).to_json(),
            "X": g["X"].to_json(),
            "Y": g["Y"].to_json(),
            "Z": g["Z"].to_json(),
        }


def build_XYZ(n: int, variant: LadderVariant, ladder: Ladder | None = None) -> tuple[Morphism, Morphism, Morphism]:
    ladder = ladder or Ladder(variant)
    g = ladder.generators(n)
    return g["X"], g["Y"], g["Z"]


@dataclass
class ExactnessReport:
    n: int
    kernel_zero: bool
    cokernel_dims: tuple[int, int]
    isomorphism: Morphism | None
    balanced: bool
    data: dict = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.kernel_zero and self.isomorphism is not None and self.balanced

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exact": self.exact,
            "kernel_zero": self.kernel_zero,
            "cokernel_dims": list(self.cokernel_dims),
            "balanced": self.balanced,
        }


def verify_universal_extension(n: int, variant: LadderVariant, ladder: Ladder | None = None) -> ExactnessReport:
    """0 -> P_n -X_n-> P_{n+1} -> S_x -> 0."""
    ladder = ladder or Ladder(variant)
    X = ladder.X(n)
    kc = kernel_cokernel(X)
    data = kc.exactness(X)
    kernel_zero = kc.kernel.is_zero()
    Sx = simple_regular(variant.algebra.x, variant.bimodule)
    iso = find_isomorphism(kc.cokernel, Sx)
    balanced = data["source_balanced"] and data["target_balanced"]
    report = ExactnessReport(n, kernel_zero, kc.cokernel.dimension_vector, iso, balanced, data)
    if not report.exact:
        raise ExactnessFailure(f"universal extension fails at n={n}", data)
    return report


@dataclass
class LadderRow:
    n: int
    relations: dict
    hom_dim: int
    end_dim: int
    hom_from_Sx: int
    exact: bool

    @property
    def ok(self) -> bool:
        core = {k: v for k, v in self.relations.items() if "alternative" not in k}
        return all(core.values()) and self.hom_dim == 3 and self.end_dim == 1 and self.hom_from_Sx == 0 and self.exact

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "relations": self.relations,
            "hom_dim": self.hom_dim,
            "end_dim": self.end_dim,
            "hom_from_Sx": self.hom_from_Sx,
            "exact": self.exact,
        }


def verify_ladder(ladder: Ladder, max_n: int = 6) -> list[LadderRow]:
    """Validation contract: relations, Hom dimension 3, End = k, Hom(S_x, P_n) = 0, exactness."""
    v = ladder.variant
    Sx = simple_regular(v.algebra.x, v.bimodule)
    rows = []
    for n in range(1, max_n + 1):
        rels = ladder.check_relations(n)
        try:
            exact = verify_universal_extension(n, v, ladder).exact
        except ExactnessFailure:
            exact = False
        rows.append(
            LadderRow(
                n,
                rels,
                len(ladder.hom(n, 1)),
                len(ladder.hom(n, 0)),
                len(hom_basis(Sx, ladder.P(n))),
                exact,
            )
        )
    return rows
