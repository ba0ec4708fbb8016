"""Four-dimensional k-algebras F = k<x, y>: quartic field towers and
quaternion algebras, in the basis (1, x, y, xy).

A tower is k ⊂ k(x) ⊂ k(x, y) with x² = c1·x + c0 and
y² = d1·y + a0 + a1·x (commuting).  Quaternion algebras come in two
shapes: x² = a, y² = b, yx = -xy (characteristic not 2) and
x² = c0 + x, y² = a0, xy = y + yx (characteristic 2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import DivisionByZero, Inconsistent, NotAssociative, ReduciblePolynomial, UnsupportedField
from .fields import Field, RationalField, RationalFunctionField
from .linalg import Echelon, Matrix, independent, inverse as mat_inverse, solve_linear

BASIS_NAMES = ("1", "x", "y", "xy")
_WORDS = ("", "x", "y", "xy")


@dataclass(frozen=True)
class QuarticTowerSpec:
    base: Field
    c1: Any
    c0: Any
    d1: Any
    a0: Any
    a1: Any

    @classmethod
    def make(cls, base, c0, a0, a1=0, c1=0, d1=0):
        return cls(base, base(c1), base(c0), base(d1), base(a0), base(a1))


@dataclass(frozen=True)
class QuaternionSpec:
    """``variant`` is "charNot2" (uses a, b) or "char2" (uses c0, a0)."""

    base: Field
    variant: str
    a: Any = None
    b: Any = None
    c0: Any = None
    a0: Any = None

    @classmethod
    def char_not_2(cls, base, a, b):
        return cls(base, "charNot2", a=base(a), b=base(b))

    @classmethod
    def char_2(cls, base, c0, a0):
        return cls(base, "char2", c0=base(c0), a0=base(a0))


class AlgebraElem:
    __slots__ = ("algebra", "c")

    def __init__(self, algebra: "Algebra", coords):
        self.algebra = algebra
        self.c = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, AlgebraElem):
            return other
        try:
            return self.algebra.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return AlgebraElem(self.algebra, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElem(self.algebra, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            return self.algebra.mul(self, other)
        return AlgebraElem(self.algebra, tuple(a * other for a in self.c))

    def __rmul__(self, other):
        # k is central, so scalar multiplication from the left agrees
        return AlgebraElem(self.algebra, tuple(other * a for a in self.c))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.algebra.one
        for _ in range(e):
            result = result * self
        return result

    def inverse(self):
        return self.algebra.inverse(self)

    def __truediv__(self, other):
        if isinstance(other, AlgebraElem):
            return self * other.inverse()
        return self * (1 / self.algebra.base(other))

    def __eq__(self, other):
        if isinstance(other, AlgebraElem):
            return self.c == other.c
        if isinstance(other, int):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def in_base(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return self.algebra.format(self)


def _rewrite(poly: dict, rules: dict, limit: int = 1000) -> dict:
    """Reduce a {word: coeff} polynomial in x, y to the basis words."""
    poly = dict(poly)
    for _ in range(limit):
        bad = next((w for w in poly if w not in _WORDS), None)
        if bad is None:
            return {w: c for w, c in poly.items() if c}
        coeff = poly.pop(bad)
        for i in range(len(bad) - 1):
            pair = bad[i : i + 2]
            if pair in rules:
                for repl, rc in rules[pair].items():
                    nw = bad[:i] + repl + bad[i + 2 :]
                    poly[nw] = poly.get(nw, 0) + coeff * rc
                break
        else:
            raise RuntimeError(f"no rule applies to {bad}")
    raise RuntimeError("rewriting did not terminate")


class Algebra:
    """A 4-dimensional associative unital k-algebra with basis (1, x, y, xy)."""

    def __init__(self, spec, base: Field, rules: dict, kind: str):
        self.spec = spec
        self.base = base
        self.kind = kind  # "tower" or "quaternion"
        self.rules = rules
        zero = base.zero
        table = {}
        for i, wi in enumerate(_WORDS):
            for j, wj in enumerate(_WORDS):
                red = _rewrite({wi + wj: base.one}, rules)
                table[i, j] = tuple(red.get(w, zero) for w in _WORDS)
        self._table = table
        self.one = AlgebraElem(self, (base.one, zero, zero, zero))
        self.zero = AlgebraElem(self, (zero,) * 4)
        self.x = AlgebraElem(self, (zero, base.one, zero, zero))
        self.y = AlgebraElem(self, (zero, zero, base.one, zero))
        self.basis = tuple(AlgebraElem(self, tuple(base.one if k == i else zero for k in range(4))) for i in range(4))
        self._check_associative()

    # construction helpers --------------------------------------------------

    def scalar(self, a) -> AlgebraElem:
        z = self.base.zero
        return AlgebraElem(self, (self.base(a), z, z, z))

    def elem(self, coords) -> AlgebraElem:
        return AlgebraElem(self, tuple(self.base(c) for c in coords))

    def __call__(self, value) -> AlgebraElem:
        if isinstance(value, AlgebraElem):
            return value
        if isinstance(value, (list, tuple)):
            return self.elem(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.scalar(value)

    def parse(self, text: str) -> AlgebraElem:
        from .fields import _parse_expression

        names = dict(self.base.generator_names())
        names.update({"x": self.x, "y": self.y})

        class _Wrap:
            # lets the shared parser build algebra elements from int literals
            def __init__(s, alg):
                s.alg = alg

            def __call__(s, v):
                return s.alg.scalar(v)

        return _parse_expression(_Wrap(self), text, names)

    def _check_associative(self):
        for a, b, c in itertools.product(self.basis, repeat=3):
            if (a * b) * c != a * (b * c):
                raise NotAssociative(f"({a})({b})({c}) is not associative")

    # arithmetic -----------------------------------------------------------

    def mul(self, a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
        out = list(self.zero.c)
        for i, ai in enumerate(a.c):
            if not ai:
                continue
            for j, bj in enumerate(b.c):
                if not bj:
                    continue
                s = ai * bj
                for k, t in enumerate(self._table[i, j]):
                    if t:
                        out[k] = out[k] + s * t
        return AlgebraElem(self, out)

    def left_matrix(self, a: AlgebraElem) -> Matrix:
        """k-matrix of b -> a*b in the basis (1, x, y, xy)."""
        cols = [(a * e).c for e in self.basis]
        return Matrix([[cols[j][i] for j in range(4)] for i in range(4)], self.base.zero, 4)

    def right_matrix(self, a: AlgebraElem) -> Matrix:
        """k-matrix of b -> b*a."""
        cols = [(e * a).c for e in self.basis]
        return Matrix([[cols[j][i] for j in range(4)] for i in range(4)], self.base.zero, 4)

    def inverse(self, a: AlgebraElem) -> AlgebraElem:
        if not a:
            raise DivisionByZero("inverse of 0 in algebra")
        try:
            sol, ker = solve_linear(self.left_matrix(a), list(self.one.c), self.base)
        except Inconsistent:
            raise DivisionByZero(f"{a} is a zero divisor") from None
        if ker:
            raise DivisionByZero(f"{a} is a zero divisor")
        return AlgebraElem(self, sol)

    def is_zero_divisor(self, a: AlgebraElem) -> bool:
        return bool(a) and bool(solve_linear(self.left_matrix(a), field=self.base))

    @property
    def is_commutative(self) -> bool:
        return all(a * b == b * a for a in self.basis for b in self.basis)

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    def elements(self):
        for cs in itertools.product(list(self.base.elements()), repeat=4):
            yield AlgebraElem(self, cs)

    def random_element(self, rng: random.Random) -> AlgebraElem:
        return AlgebraElem(self, tuple(self.base.random_element(rng) for _ in range(4)))

    def coords(self, a: AlgebraElem) -> list:
        return list(a.c)

    def format(self, a: AlgebraElem) -> str:
        parts = []
        for c, name in zip(a.c, BASIS_NAMES):
            if not c:
                continue
            cs = self.base.format(c)
            if name == "1":
                parts.append(cs)
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            elif any(ch in cs[1:] for ch in "+-/"):
                parts.append(f"({cs})*{name}")
            else:
                parts.append(f"{cs}*{name}")
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")

    def descriptor(self) -> dict:
        s, f = self.spec, self.base.format
        if isinstance(s, QuarticTowerSpec):
            return {"kind": "tower", "c1": f(s.c1), "c0": f(s.c0), "d1": f(s.d1), "a0": f(s.a0), "a1": f(s.a1)}
        if s.variant == "charNot2":
            return {"kind": "quaternion", "variant": "charNot2", "a": f(s.a), "b": f(s.b)}
        return {"kind": "quaternion", "variant": "char2", "c0": f(s.c0), "a0": f(s.a0)}

    def __repr__(self):
        return f"Algebra({self.descriptor()} over {self.base})"


# -- quadratic extensions (used for square roots inside towers) -------------


class _QE:
    """Element p + q·t of base(t), t² = c1·t + c0."""

    __slots__ = ("p", "q", "ext")

    def __init__(self, p, q, ext):
        self.p, self.q, self.ext = p, q, ext

    def __add__(self, o):
        o = self.ext.lift(o)
        return _QE(self.p + o.p, self.q + o.q, self.ext)

    __radd__ = __add__

    def __neg__(self):
        return _QE(-self.p, -self.q, self.ext)

    def __sub__(self, o):
        return self + (-self.ext.lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self.ext.lift(o)
        e = self.ext
        qq = self.q * o.q
        return _QE(self.p * o.p + qq * e.c0, self.p * o.q + self.q * o.p + qq * e.c1, e)

    __rmul__ = __mul__

    def inverse(self):
        e = self.ext
        n = self.p * self.p + self.p * self.q * e.c1 - self.q * self.q * e.c0
        if not n:
            raise DivisionByZero("inverse of 0")
        ninv = 1 / n
        return _QE((self.p + self.q * e.c1) * ninv, -self.q * ninv, e)

    def __truediv__(self, o):
        return self * self.ext.lift(o).inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __eq__(self, o):
        o = self.ext.lift(o)
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)


class _QuadExt:
    """base(t) with t² = c1·t + c0, characteristic not 2; offers ``sqrt``."""

    def __init__(self, base, c1, c0):
        self.base, self.c1, self.c0 = base, c1, c0
        half = 1 / (base.one + base.one)
        self._half = half
        self.d = c0 + c1 * c1 * half * half  # (t - c1/2)^2

    def lift(self, a):
        if isinstance(a, _QE):
            return a
        return _QE(self.base(a) if not isinstance(a, (int, Fraction)) else self.base(a), self.base.zero, self)

    def __call__(self, a):
        return self.lift(a)

    @property
    def zero(self):
        return self.lift(0)

    @property
    def one(self):
        return self.lift(1)

    def sqrt(self, a):
        """Square root of p + q·t in base(t), or None."""
        a = self.lift(a)
        h = self._half
        # switch to s = t - c1/2 with s² = d
        U, V = a.p + a.q * self.c1 * h, a.q
        sol = None
        if not V:
            r = self.base.sqrt(U)
            if r is not None:
                sol = (r, self.base.zero)
            elif self.d:
                r = self.base.sqrt(U / self.d)
                if r is not None:
                    sol = (self.base.zero, r)
        else:
            n = self.base.sqrt(U * U - self.d * V * V)
            if n is not None:
                for cand in (U + n, U - n):
                    P = self.base.sqrt(cand * h)
                    if P:
                        sol = (P, V / (P + P))
                        break
        if sol is None:
            return None
        P, Q = sol
        return _QE(P - Q * self.c1 * h, Q, self)


def _tower_as_ext(alg: Algebra):
    s = alg.spec
    L = _QuadExt(alg.base, s.c1, s.c0)
    K = _QuadExt(L, L.lift(s.d1), _QE(s.a0, s.a1, L))
    return L, K


def _to_nested(alg: Algebra, a: AlgebraElem, L, K):
    w0, w1, w2, w3 = a.c
    return _QE(_QE(w0, w1, L), _QE(w2, w3, L), K)


def _from_nested(alg: Algebra, z) -> AlgebraElem:
    return AlgebraElem(alg, (z.p.p, z.p.q, z.q.p, z.q.q))


# -- quadratic root finding ---------------------------------------------------


def _has_root_in_base(field: Field, b, c) -> bool:
    """Does t² + b·t + c have a root in the field?"""
    if field.is_finite:
        return any(t * t + b * t + c == 0 for t in field.elements())
    if field.characteristic != 2:
        disc = b * b - 4 * c
        return field.sqrt(disc) is not None
    if not b:
        return field.sqrt(c) is not None
    return _artin_schreier_root(field, c / (b * b)) is not None


def _artin_schreier_root(field: RationalFunctionField, r):
    """Solve w² + w = r in F_2(vars), or None.

    Writing w = f/g in lowest terms forces g² = den(r) and
    f² + f·g = num(r).  Squaring is F_2-linear, so f is found by linear
    algebra on its coefficient vector (degree bounded as below).
    """
    if not isinstance(field, RationalFunctionField) or field.p != 2:
        raise UnsupportedField("Artin-Schreier roots implemented over F_2(vars) only")
    R = field._ring
    g = field.poly_sqrt(r.den)
    if g is None:
        return None
    A = r.num
    dg = _total_degree(g)
    dA = _total_degree(A)
    bound = max(dg, dA // 2)
    nv = len(R.gens)
    monos = [e for e in itertools.product(range(bound + 1), repeat=nv) if sum(e) <= bound]
    images = []
    for e in monos:
        m = R({e: 1})
        images.append(m * m + m * g)
    keys = sorted({k for im in images for k in im.keys()} | set(A.keys()))
    index = {k: i for i, k in enumerate(keys)}
    F2 = field.prime_field
    rows = [[F2(0)] * len(monos) for _ in keys]
    for j, im in enumerate(images):
        for k, c in im.terms():
            rows[index[k]][j] = F2(int(c))
    rhs = [F2(0)] * len(keys)
    for k, c in A.terms():
        rhs[index[k]] = F2(int(c))
    try:
        sol, _ = solve_linear(rows, rhs, F2)
    except Inconsistent:
        return None
    f = R.zero
    for e, c in zip(monos, sol):
        if c:
            f = f + R({e: 1})
    from .fields import RatFuncElement

    return RatFuncElement(f, g, field)


def _total_degree(f) -> int:
    if not f:
        return 0
    return max(sum(e) for e in f.keys())


def _quadratic_irreducible_over_subfield(spec: QuarticTowerSpec) -> bool:
    """Is y² - d1·y - (a0 + a1·x) irreducible over k(x)?"""
    k = spec.base
    if k.is_finite:
        for p, q in itertools.product(list(k.elements()), repeat=2):
            # t = p + q x ; t² - d1 t - a0 - a1 x
            t0 = p * p + q * q * spec.c0 - spec.d1 * p - spec.a0
            t1 = 2 * p * q + q * q * spec.c1 - spec.d1 * q - spec.a1
            if not t0 and not t1:
                return False
        return True
    if k.characteristic != 2:
        L = _QuadExt(k, spec.c1, spec.c0)
        disc = _QE(spec.d1 * spec.d1 + 4 * spec.a0, 4 * spec.a1, L)
        return L.sqrt(disc) is None
    if spec.d1:
        raise UnsupportedField("Artin-Schreier irreducibility over k(x) is not implemented for infinite k")
    # y² = a0 + a1 x ; (p + q x)² = p² + q² c0 + q² c1 x
    if spec.c1:
        q = k.sqrt(spec.a1 / spec.c1)
        if q is None:
            return True
        return k.sqrt(spec.a0 + q * q * spec.c0) is None
    if spec.a1:
        return True
    return not _in_square_span(k, spec.a0, spec.c0)


def _in_square_span(k: RationalFunctionField, a, c0) -> bool:
    """Char 2: is a = p² + c0·q² for some p, q in k?"""
    da, dc = k.square_decomposition(a), k.square_decomposition(c0)
    one_key = tuple(0 for _ in k.variables)
    keys = sorted(set(da) | set(dc) | {one_key})
    # unknowns P, Q (square roots of p², q²): a_b = [b == 1] P + c_b Q
    rows, rhs = [], []
    for key in keys:
        rows.append([k.one if key == one_key else k.zero, dc.get(key, k.zero)])
        rhs.append(da.get(key, k.zero))
    try:
        solve_linear(rows, rhs, k)
        return True
    except Inconsistent:
        return False


def build_algebra(spec) -> Algebra:
    """Construct the algebra for a tower or quaternion spec, checking its invariants."""
    k = spec.base
    if isinstance(spec, QuarticTowerSpec):
        if _has_root_in_base(k, -spec.c1, -spec.c0):
            raise ReduciblePolynomial(f"x^2 - ({k.format(spec.c1)})x - ({k.format(spec.c0)}) has a root in {k}")
        if not _quadratic_irreducible_over_subfield(spec):
            raise ReduciblePolynomial("y^2 - d1 y - (a0 + a1 x) has a root in k(x)")
        rules = {
            "xx": {"x": spec.c1, "": spec.c0},
            "yy": {"y": spec.d1, "": spec.a0, "x": spec.a1},
            "yx": {"xy": k.one},
        }
        return Algebra(spec, k, rules, "tower")
    if isinstance(spec, QuaternionSpec):
        if spec.variant == "charNot2":
            if k.characteristic == 2:
                raise ValueError("charNot2 quaternions need characteristic != 2")
            if not spec.a or not spec.b:
                raise ValueError("quaternion parameters must be nonzero")
            rules = {"xx": {"": spec.a}, "yy": {"": spec.b}, "yx": {"xy": -k.one}}
        elif spec.variant == "char2":
            if k.characteristic != 2:
                raise ValueError("char2 quaternions need characteristic 2")
            if not spec.a0:
                raise ValueError("a0 must be nonzero")
            # xy = y + yx  <=>  yx = xy - y
            rules = {"xx": {"": spec.c0, "x": k.one}, "yy": {"": spec.a0}, "yx": {"xy": k.one, "y": -k.one}}
        else:
            raise ValueError(f"unknown quaternion variant {spec.variant!r}")
        return Algebra(spec, k, rules, "quaternion")
    raise TypeError(f"not an algebra spec: {spec!r}")


# -- division test ------------------------------------------------------------


@dataclass(frozen=True)
class DivisionCheck:
    """``is_division`` is True, False, or None (unknown within the search bound)."""

    is_division: bool | None
    reason: str
    witness: Any = None


def _valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a: Fraction, b: Fraction, p: int | None) -> int:
    """Hilbert symbol (a, b)_p over Q; ``p=None`` means the real place."""
    a, b = Fraction(a), Fraction(b)
    if p is None:
        return -1 if a < 0 and b < 0 else 1
    # clear denominators inside the square class
    A = a.numerator * a.denominator
    B = b.numerator * b.denominator
    alpha, u = _valuation(A, p)
    beta, v = _valuation(B, p)
    if p != 2:
        eps = (p - 1) // 2
        s = (-1) ** (alpha * beta * eps)
        if beta % 2:
            s *= _legendre(u, p)
        if alpha % 2:
            s *= _legendre(v, p)
        return s

    def e(t):
        return ((t - 1) // 2) % 2

    def w(t):
        return ((t * t - 1) // 8) % 2

    exp = e(u) * e(v) + alpha * w(v) + beta * w(u)
    return -1 if exp % 2 else 1


def _prime_factors(n: int) -> set:
    n = abs(n)
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


EXHAUSTIVE_LIMIT = 30_000
SEARCH_BOUND = 10_000


def is_division_algebra(alg: Algebra, search_bound: int = SEARCH_BOUND) -> DivisionCheck:
    k = alg.base
    if k.is_finite and k.order**4 <= EXHAUSTIVE_LIMIT:
        for a in alg.elements():
            if a and alg.is_zero_divisor(a):
                return DivisionCheck(False, "zero divisor found by exhaustive search", a)
        return DivisionCheck(True, "exhaustive search: every nonzero element is invertible")
    if alg.kind == "tower":
        return DivisionCheck(True, "commutative tower with irreducible defining polynomials is a field")
    s = alg.spec
    if isinstance(k, RationalField) and s.variant == "charNot2":
        a, b = Fraction(s.a), Fraction(s.b)
        places = {None, 2} | _prime_factors(a.numerator * a.denominator) | _prime_factors(b.numerator * b.denominator)
        ramified = [p for p in sorted(places, key=lambda t: -1 if t is None else t) if hilbert_symbol(a, b, p) == -1]
        if ramified:
            names = ["inf" if p is None else str(p) for p in ramified]
            return DivisionCheck(True, f"Hilbert symbol is -1 at {', '.join(names)}", tuple(names))
        return DivisionCheck(False, "Hilbert symbol is +1 at every place (split)")
    # bounded zero-divisor search
    if k.is_finite:
        elems = list(k.elements())
    else:
        elems = k.sample(max(3, int(round(search_bound ** 0.25)) + 1))
    count = 0
    for cs in itertools.product(elems, repeat=4):
        count += 1
        if count > search_bound:
            break
        a = AlgebraElem(alg, cs)
        if a and alg.is_zero_divisor(a):
            return DivisionCheck(False, "zero divisor found by bounded search", a)
    if k.is_finite and k.characteristic and alg.kind == "quaternion":
        return DivisionCheck(False, "quaternion algebras over finite fields split")
    return DivisionCheck(None, f"no zero divisor among {min(count, search_bound)} candidates")


# -- Galois group, primitive elements, subfields ------------------------------------


def _require_tower(alg: Algebra):
    if alg.kind != "tower":
        raise TypeError("this operation needs a commutative tower")


def _roots_in_tower(alg: Algebra, b: AlgebraElem, c: AlgebraElem) -> list[AlgebraElem]:
    """Roots in K of t² + b·t + c."""
    k = alg.base
    if k.is_finite:
        return [t for t in alg.elements() if t * t + b * t + c == alg.zero]
    if k.characteristic != 2:
        L, K = _tower_as_ext(alg)
        disc = b * b - c * 4
        r = K.sqrt(_to_nested(alg, disc, L, K))
        if r is None:
            return []
        r = _from_nested(alg, r)
        half = 1 / k(2)
        roots = {(-b + r) * half, (-b - r) * half}
        return sorted(roots, key=lambda e: str(e.c))
    if b:
        raise UnsupportedField("separable quadratic roots in characteristic-2 infinite towers are not implemented")
    # z² = -c, char 2 commutative: (sum w_i e_i)² = sum w_i² e_i²
    sq = [e * e for e in alg.basis]
    rows = [[sq[j].c[i] for j in range(4)] for i in range(4)]
    try:
        u, ker = solve_linear(rows, list(c.c), k)
    except Inconsistent:
        return []
    if ker:
        return _char2_sqrt(alg, sq, -c)
    ws = [k.sqrt(ui) for ui in u]
    if any(w is None for w in ws):
        return []
    return [AlgebraElem(alg, ws)]


def _char2_sqrt(alg: Algebra, sq: list[AlgebraElem], target: AlgebraElem) -> list[AlgebraElem]:
    """Roots of z² = target when squaring collapses the basis (purely inseparable parts).

    Writing every coordinate as sum_m alpha_m² m over the monomial p-basis
    of k over k² turns sum_i w_i² sq_i = target into a linear system in w.
    """
    k = alg.base
    if not hasattr(k, "square_decomposition"):
        raise UnsupportedField("square roots need a p-basis of the base field")
    rows, rhs = [], []
    dec_sq = [[k.square_decomposition(sq[i].c[j]) for j in range(4)] for i in range(4)]
    dec_t = [k.square_decomposition(target.c[j]) for j in range(4)]
    for j in range(4):
        keys = set(dec_t[j]).union(*(dec_sq[i][j] for i in range(4)))
        for m in sorted(keys):
            rows.append([dec_sq[i][j].get(m, k.zero) for i in range(4)])
            rhs.append(dec_t[j].get(m, k.zero))
    try:
        w, _ = solve_linear(rows, rhs, k)
    except Inconsistent:
        return []
    return [AlgebraElem(alg, w)]


@dataclass(frozen=True)
class GaloisGroup:
    elements: tuple  # 4x4 matrices over k, columns = images of (1, x, y, xy)
    images: tuple  # (sigma(x), sigma(y)) pairs

    @property
    def order(self) -> int:
        return len(self.elements)

    def structure(self) -> str:
        n = self.order
        if n == 1:
            return "trivial"
        if n == 4:
            sq_identity = all(_mat_mul(m, m) == _identity_like(m) for m in self.elements)
            return "Klein four" if sq_identity else "cyclic 4"
        return f"cyclic {n}" if n in (2, 3) else f"order {n}"


def _identity_like(m: Matrix) -> Matrix:
    return Matrix([[m.rows[0][0] * 0 + (1 if i == j else 0) for j in range(m.ncols)] for i in range(m.nrows)], m.zero)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def apply_automorphism(alg: Algebra, matrix: Matrix, a: AlgebraElem) -> AlgebraElem:
    return AlgebraElem(alg, [sum((matrix.rows[i][j] * a.c[j] for j in range(4)), alg.base.zero) for i in range(4)])


def galois_group(alg: Algebra) -> GaloisGroup:
    """All k-algebra automorphisms of the field K."""
    _require_tower(alg)
    s = alg.spec
    mats, imgs = [], []
    for sx in _roots_in_tower(alg, alg.scalar(-s.c1), alg.scalar(-s.c0)):
        rhs = alg.scalar(s.a0) + sx * s.a1
        for sy in _roots_in_tower(alg, alg.scalar(-s.d1), -rhs):
            images = [alg.one, sx, sy, sx * sy]
            m = Matrix([[images[j].c[i] for j in range(4)] for i in range(4)], alg.base.zero, 4)
            if mat_inverse(m, alg.base) is None:
                continue
            ok = all(
                apply_automorphism(alg, m, a * b) == apply_automorphism(alg, m, a) * apply_automorphism(alg, m, b)
                for a in alg.basis
                for b in alg.basis
            )
            if ok:
                mats.append(m)
                imgs.append((sx, sy))
    return GaloisGroup(tuple(mats), tuple(imgs))


def _degree_over_base(alg: Algebra, z: AlgebraElem) -> int:
    powers = [alg.one]
    for _ in range(3):
        powers.append(powers[-1] * z)
    for d in range(1, 5):
        if not independent([list(p.c) for p in powers[: d + 1]]):
            return d
    return 4


@dataclass(frozen=True)
class PrimitiveElementResult:
    exists: bool
    witness: AlgebraElem | None
    reason: str


def primitive_element_exists(alg: Algebra) -> PrimitiveElementResult:
    _require_tower(alg)
    s = alg.spec
    k = alg.base
    if k.characteristic == 2 and not s.c1 and not s.d1 and not s.a1:
        return PrimitiveElementResult(False, None, "x^2 and y^2 lie in k: every element squares into k")
    lambdas = [c for c in k.sample(8) if c][:5]
    candidates = [alg.y, alg.x] + [alg.x + alg.y * lam for lam in lambdas] + [alg.y + alg.x * lam for lam in lambdas]
    for z in candidates:
        if _degree_over_base(alg, z) == 4:
            return PrimitiveElementResult(True, z, "1, z, z^2, z^3 are k-linearly independent")
    if k.is_finite:
        for z in alg.elements():
            if _degree_over_base(alg, z) == 4:
                return PrimitiveElementResult(True, z, "found by exhaustive search")
    raise RuntimeError("no primitive element found among the candidates")


def element_degree(alg: Algebra, z: AlgebraElem) -> int:
    return _degree_over_base(alg, z)


@dataclass(frozen=True)
class QuadraticSubfield:
    generator: AlgebraElem
    complete: bool = True

    def basis(self):
        return (self.generator.algebra.one, self.generator)


def _subspace_key(alg: Algebra, z: AlgebraElem):
    ech = Echelon(4)
    ech.add({i: c for i, c in enumerate(alg.one.c) if c})
    ech.add({i: c for i, c in enumerate(z.c) if c})
    return tuple(sorted((c, tuple(sorted((k, str(v)) for k, v in row.items()))) for c, row in ech.rref().items()))


def intermediate_quadratic_fields(alg: Algebra) -> list[QuadraticSubfield]:
    _require_tower(alg)
    k = alg.base
    s = alg.spec
    found: dict = {}

    def add(z, complete=True):
        if z.in_base() or _degree_over_base(alg, z) != 2:
            return
        key = _subspace_key(alg, z)
        found.setdefault(key, QuadraticSubfield(z, complete))

    add(alg.x)
    if k.is_finite:
        for z in alg.elements():
            add(z)
        return list(found.values())
    if k.characteristic != 2:
        group = galois_group(alg)
        for m in group.elements:
            if m == _identity_like(m):
                continue
            if _mat_mul(m, m) != _identity_like(m):
                continue
            diff = m - _identity_like(m)
            for v in solve_linear(diff, field=k):
                z = AlgebraElem(alg, v)
                add(z)
        return list(found.values())
    # characteristic 2, infinite base
    if not s.c1 and not s.d1 and not s.a1:
        # purely inseparable biquadratic: infinitely many, list the coordinate ones
        add(alg.y, complete=False)
        add(alg.x + alg.y, complete=False)
        return [QuadraticSubfield(q.generator, False) for q in found.values()]
    return list(found.values())
