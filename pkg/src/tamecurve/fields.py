"""Exact base fields: prime fields, finite fields, the rationals and
rational function fields in at most two variables over a prime field.

Elements support the usual arithmetic operators and mix freely with
Python ints.  Every element is kept in a canonical form, so ``==`` is
mathematical equality and elements hash consistently.

Rationals are plain :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import ast
import itertools
import math
import random
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import DivisionByZero, InfiniteField, SpecParseError, UnsupportedField
from .mpoly import MPolyRing


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


class Field:
    """Common interface of all base fields."""

    characteristic: int
    order: int | None = None  # None for infinite fields

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise InfiniteField(f"{self} is infinite")

    def nonzero_elements(self) -> Iterator:
        return (a for a in self.elements() if a)

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def sqrt(self, a):
        """A square root of ``a`` in this field, or None."""
        raise NotImplementedError

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def parse(self, text):
        return _parse_expression(self, str(text), self.generator_names())

    def generator_names(self) -> dict:
        return {}

    def format(self, a) -> str:
        return str(a)

    def descriptor(self) -> dict:
        raise NotImplementedError

    def sample(self, count: int) -> list:
        """The first ``count`` elements of a fixed enumeration (infinite fields too)."""
        if self.is_finite:
            return list(itertools.islice(self.elements(), count))
        return [self(i) for i in range(count)]


# -- prime fields ---------------------------------------------------------


class PrimeFieldElement:
    __slots__ = ("v", "field")

    def __init__(self, v: int, field: "PrimeField"):
        self.v = v
        self.field = field

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.field.p != self.field.p:
                raise TypeError("elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.v + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.v - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((o - self.v) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.v * o) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement((-self.v) % self.field.p, self.field)

    def inverse(self):
        if self.v == 0:
            raise DivisionByZero("inverse of 0")
        return PrimeFieldElement(pow(self.v, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self.field(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElement(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.v == other.v and self.field.p == other.field.p
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self._elements = tuple(PrimeFieldElement(i, self) for i in range(p))

    def __call__(self, value):
        if isinstance(value, PrimeFieldElement):
            return value
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        if isinstance(value, str):
            return self.parse(value)
        return self._elements[int(value) % self.p]

    def elements(self):
        return iter(self._elements)

    def random_element(self, rng):
        return self._elements[rng.randrange(self.p)]

    def sqrt(self, a):
        a = self(a)
        for r in self._elements:
            if r * r == a:
                return r
        return None

    def descriptor(self):
        return {"kind": "finite", "p": self.p, "m": 1}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# -- univariate polynomials over a field -----------------------------------


class Poly:
    """Dense univariate polynomial over a field; coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, field, degree, coeff=1):
        return cls(field, [0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Poly(self.field, [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.field, [c * other for c in self.coeffs])
        if not self or not other:
            return Poly(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(len(rem) - other.degree, 1)
        inv_lc = 1 / other.lc
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            c = rem[-1] * inv_lc
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        return self * (1 / self.lc) if self else self

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = self.field.zero * x if not isinstance(x, int) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = self.field.format(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"({cs})*{mono}" if "+" in cs or "-" in cs[1:] else f"{cs}*{mono}")
        return " + ".join(terms)


def monic_polys(field: Field, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree over a finite field."""
    elems = list(field.elements())
    for tail in itertools.product(elems, repeat=degree):
        yield Poly(field, list(tail) + [field.one])


@lru_cache(maxsize=None)
def _irreducibles_cached(field: Field, degree: int) -> tuple:
    if degree == 1:
        return tuple(Poly(field, [-a, 1]) for a in field.elements())
    lower = [g for d in range(1, degree // 2 + 1) for g in _irreducibles_cached(field, d)]
    out = []
    for f in monic_polys(field, degree):
        if all(f % g for g in lower):
            out.append(f)
    return tuple(out)


def irreducible_polys(field: Field, degree: int) -> tuple:
    """Monic irreducible polynomials of one degree over a finite field."""
    if not field.is_finite:
        raise UnsupportedField("irreducible enumeration needs a finite field")
    return _irreducibles_cached(field, degree)


def is_irreducible(f: Poly) -> bool:
    """Trial division by every monic irreducible up to half the degree."""
    if not f.field.is_finite:
        raise UnsupportedField("irreducibility test needs a finite field")
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in irreducible_polys(f.field, d):
            if not f % g:
                return False
    return True


def factor(f: Poly) -> tuple:
    """Return ``(unit, [(g, multiplicity), ...])`` with monic irreducible ``g``."""
    if not f.field.is_finite:
        raise UnsupportedField("factorization needs a finite field")
    if f.degree < 1:
        raise ValueError("factor() needs a polynomial of degree >= 1")
    unit = f.lc
    rest = f.monic()
    factors = []
    d = 1
    while rest.degree >= 2 * d:
        for g in irreducible_polys(f.field, d):
            mult = 0
            while True:
                q, r = divmod(rest, g)
                if r:
                    break
                rest, mult = q, mult + 1
            if mult:
                factors.append((g, mult))
        d += 1
    if rest.degree >= 1:
        factors.append((rest, 1))
    factors.sort(key=lambda gm: (gm[0].degree, [int_key(c) for c in gm[0].coeffs]))
    return unit, factors


def int_key(c):
    """Deterministic sort key for finite field elements."""
    if isinstance(c, PrimeFieldElement):
        return c.v
    if isinstance(c, GFElement):
        return tuple(reversed(c.c))
    return str(c)


# -- finite fields of prime power order -------------------------------------


class GFElement:
    __slots__ = ("c", "field")

    def __init__(self, c: tuple, field: "GaloisField"):
        self.c = c
        self.field = field

    def _coerce(self, other):
        if isinstance(other, GFElement):
            return other
        if isinstance(other, (int, PrimeFieldElement)):
            return self.field(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return GFElement(tuple((a + b) % p for a, b in zip(self.c, o.c)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return GFElement(tuple((-a) % p for a in self.c), self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.c):
            raise DivisionByZero("inverse of 0")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.c == other.c and (self.field is other.field or self.field == other.field)
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.field.format(self)


class GaloisField(Field):
    """GF(p^m) as F_p[g]/(modulus); ``g`` is the printed generator name."""

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None, name: str = "g"):
        if m == 1:
            raise ValueError("use PrimeField for m = 1")
        self.p = p
        self.m = m
        self.characteristic = p
        self.order = p**m
        self.name = name
        self.prime_field = PrimeField(p)
        if modulus is None:
            modulus = irreducible_polys(self.prime_field, m)[0].coeffs
        mod = Poly(self.prime_field, modulus)
        if mod.degree != m or mod.lc != 1 or not is_irreducible(mod):
            raise ValueError(f"modulus {modulus} is not monic irreducible of degree {m} over GF({p})")
        self.modulus = tuple(int(c) for c in mod.coeffs)
        # x^m = -sum(mod[i] x^i)
        self._reduce = tuple((-c) % p for c in self.modulus[:m])

    def _mul(self, a: GFElement, b: GFElement) -> GFElement:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        red = self._reduce
        for k in range(2 * m - 2, m - 1, -1):
            t = prod[k] % p
            if t:
                for i in range(m):
                    prod[k - m + i] += t * red[i]
        return GFElement(tuple(v % p for v in prod[:m]), self)

    def __call__(self, value):
        if isinstance(value, GFElement):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (list, tuple)):
            cs = [int(v) % self.p for v in value] + [0] * self.m
            if any(cs[self.m:]):
                raise ValueError("too many coefficients")
            return GFElement(tuple(cs[: self.m]), self)
        return GFElement((int(value) % self.p,) + (0,) * (self.m - 1), self)

    @cached_property
    def gen(self):
        return self([0, 1])

    def generator_names(self):
        return {self.name: self.gen}

    def elements(self):
        for cs in itertools.product(range(self.p), repeat=self.m):
            yield GFElement(tuple(reversed(cs)), self)

    def random_element(self, rng):
        return GFElement(tuple(rng.randrange(self.p) for _ in range(self.m)), self)

    def sqrt(self, a):
        a = self(a)
        if self.p == 2:
            return a ** (self.order // 2)
        for r in self.elements():
            if r * r == a:
                return r
        return None

    def frobenius(self, a, power: int = 1):
        return a ** (self.p**power)

    def format(self, a):
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = a.c[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.name if i == 1 else f"{self.name}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def descriptor(self):
        return {"kind": "finite", "p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (other.p, other.m, other.modulus) == (self.p, self.m, self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})"


def FiniteField(p: int, m: int = 1, modulus=None, name: str = "g") -> Field:
    return PrimeField(p) if m == 1 else GaloisField(p, m, modulus, name)


# -- rationals ------------------------------------------------------------


class RationalField(Field):
    characteristic = 0
    order = None

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def sample(self, count):
        out, seen = [], set()
        for h in itertools.count(1):
            for num in range(-h, h + 1):
                for den in range(1, h + 1):
                    q = Fraction(num, den)
                    if q not in seen:
                        seen.add(q)
                        out.append(q)
                        if len(out) == count:
                            return out

    def descriptor(self):
        return {"kind": "rationals"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -- rational function fields ---------------------------------------------


class RatFuncElement:
    """A reduced fraction num/den of polynomials with monic denominator."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field: "RationalFunctionField", reduced: bool = False):
        if not den:
            raise DivisionByZero("zero denominator")
        if not reduced:
            g = num.gcd(den)
            if g != field._ring.one:
                num, den = num.exquo(g), den.exquo(g)
        lc = den.LC
        if lc != 1:
            inv = pow(lc, -1, field.p)
            num, den = num * inv, den * inv
        if not num:
            den = field._ring.one
        self.num = num
        self.den = den
        self.field = field

    def _coerce(self, other):
        if isinstance(other, RatFuncElement):
            return other
        if isinstance(other, (int, PrimeFieldElement)):
            return self.field(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        one = self.field._ring.one
        if self.den == o.den:
            return RatFuncElement(self.num + o.num, self.den, self.field, reduced=self.den == one)
        # Henrici: with g = gcd(d1, d2) only g can share factors with the new numerator
        g = self.den.gcd(o.den)
        d1, d2 = self.den.exquo(g), o.den.exquo(g)
        num = self.num * d2 + o.num * d1
        den = self.den * d2
        if g != one:
            h = num.gcd(g)
            if h != one:
                num, den = num.exquo(h), den.exquo(h)
        return RatFuncElement(num, den, self.field, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncElement(-self.num, self.den, self.field, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return self.field.zero
        g1, g2 = self.num.gcd(o.den), o.num.gcd(self.den)
        num = self.num.exquo(g1) * o.num.exquo(g2)
        den = self.den.exquo(g2) * o.den.exquo(g1)
        return RatFuncElement(num, den, self.field, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of 0")
        return RatFuncElement(self.den, self.num, self.field, reduced=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFuncElement(self.num**e, self.den**e, self.field, reduced=True)

    def __eq__(self, other):
        if isinstance(other, RatFuncElement):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return self.field.format(self)


class RationalFunctionField(Field):
    """F_p(v1[, v2]); ``display`` optionally renames variables when printing."""

    def __init__(self, p: int, variables: Sequence[str], display: dict | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not 1 <= len(variables) <= 2:
            raise UnsupportedField("rational function fields support one or two variables")
        self.p = p
        self.characteristic = p
        self.order = None
        self.variables = tuple(variables)
        self.display = dict(display or {})
        self._ring = MPolyRing(self.variables, p)
        self._gens = tuple(RatFuncElement(g, self._ring.one, self, reduced=True) for g in self._ring.gens)
        self.prime_field = PrimeField(p)

    @property
    def gens(self):
        return self._gens

    def generator_names(self):
        return dict(zip(self.variables, self._gens))

    def __call__(self, value):
        if isinstance(value, RatFuncElement):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        return RatFuncElement(self._ring(int(value) % self.p), self._ring.one, self, reduced=True)

    def random_element(self, rng):
        def rpoly():
            acc = self._ring.zero
            for exps in itertools.product(range(3), repeat=len(self.variables)):
                if sum(exps) <= 2:
                    c = rng.randrange(self.p)
                    if c:
                        term = self._ring.one * c
                        for g, e in zip(self._ring.gens, exps):
                            term = term * g**e
                        acc = acc + term
            return acc

        num = rpoly()
        den = rpoly()
        while not den:
            den = rpoly()
        return RatFuncElement(num, den, self)

    def sample(self, count):
        out = []
        gens = self._ring.gens
        for d in itertools.count(0):
            for exps in itertools.product(range(d + 1), repeat=len(gens)):
                if sum(exps) != d:
                    continue
                mono = self._ring.one
                for g, e in zip(gens, exps):
                    mono = mono * g**e
                for c in range(1, self.p):
                    for extra in (self._ring.zero, self._ring.one):
                        el = RatFuncElement(mono * c + extra, self._ring.one, self, reduced=True)
                        if el not in out:
                            out.append(el)
                        if len(out) == count:
                            return out

    # polynomial helpers --------------------------------------------------

    def _coeff_int(self, c) -> int:
        return int(c) % self.p

    def poly_sqrt(self, f):
        """Square root of a polynomial in F_p[vars], or None."""
        return f.sqrt() if f else f

    def sqrt(self, a):
        a = self(a)
        if not a:
            return a
        n, d = self.poly_sqrt(a.num), self.poly_sqrt(a.den)
        if n is None or d is None:
            # the denominator is monic; allow a unit on the numerator side
            return None
        return RatFuncElement(n, d, self)

    def square_decomposition(self, a) -> dict:
        """Char 2 only: write a = sum_b c_b^2 * b over the monomial p-basis.

        Returns {basis exponent tuple: c_b}.  The p-basis of k over k^2 is
        the set of squarefree monomials in the variables.
        """
        if self.p != 2:
            raise UnsupportedField("square decomposition implemented for characteristic 2")
        a = self(a)
        R = self._ring
        # a = num/den = num*den / den^2
        prod = a.num * a.den
        parts: dict = {}
        for exps, c in prod.terms():
            key = tuple(e % 2 for e in exps)
            half = tuple(e // 2 for e in exps)
            parts[key] = parts.get(key, R.zero) + R({half: self._coeff_int(c)})
        out = {}
        den_sqrt = self.poly_sqrt(a.den * a.den)
        for key, poly in parts.items():
            if poly:
                out[key] = RatFuncElement(poly, den_sqrt, self)
        return out

    def format(self, a):
        def fmt_poly(f):
            if not f:
                return "0"
            terms = []
            for exps, c in sorted(f.terms(), reverse=True):
                c = self._coeff_int(c)
                factors = []
                for v, e in zip(self.variables, exps):
                    name = self.display.get(v, v)
                    if e == 0:
                        continue
                    if e == 1:
                        factors.append(name)
                    elif "^" in name:
                        base, _, pw = name.partition("^")
                        factors.append(f"{base}^{int(pw) * e}")
                    else:
                        factors.append(f"{name}^{e}")
                mono = "*".join(factors)
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
            return "+".join(terms)

        n = fmt_poly(a.num)
        if a.den == self._ring.one:
            return n
        return f"({n})/({fmt_poly(a.den)})"

    def descriptor(self):
        d = {"kind": "ratfunc", "p": self.p, "vars": list(self.variables)}
        if self.display:
            d["display"] = dict(self.display)
        return d

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (other.p, other.variables) == (self.p, self.variables)

    def __hash__(self):
        return hash(("ratfunc", self.p, self.variables))

    def __repr__(self):
        return f"GF({self.p})({','.join(self.variables)})"


# -- parsing --------------------------------------------------------------


def _parse_expression(field: Field, text: str, names: dict):
    """Evaluate a small arithmetic expression (+ - * / ^, ints, generator names)."""
    src = text.strip().replace("^", "**")
    if not src:
        raise SpecParseError(f"empty scalar expression for {field}")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise SpecParseError(f"cannot parse scalar {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return field(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise SpecParseError(f"unknown symbol {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise SpecParseError(f"exponents must be integer literals in {text!r}")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise SpecParseError(f"unsupported syntax in scalar {text!r}")

    return ev(tree)


def field_from_descriptor(desc: dict) -> Field:
    """Build a base field from its JSON descriptor."""
    kind = desc.get("kind")
    if kind == "finite":
        allowed = {"kind", "p", "m", "modulus", "name"}
        _reject_unknown(desc, allowed)
        p, m = int(desc["p"]), int(desc.get("m", 1))
        if not is_prime(p):
            raise SpecParseError(f"p = {p} is not prime", field="p")
        return FiniteField(p, m, desc.get("modulus"), desc.get("name", "g"))
    if kind == "rationals":
        _reject_unknown(desc, {"kind"})
        return QQ
    if kind == "ratfunc":
        _reject_unknown(desc, {"kind", "p", "vars", "display"})
        return RationalFunctionField(int(desc["p"]), desc["vars"], desc.get("display"))
    raise SpecParseError(f"unknown base field kind {kind!r}", field="kind")


def _reject_unknown(desc: dict, allowed: set):
    extra = set(desc) - allowed
    if extra:
        raise SpecParseError(f"unknown keys {sorted(extra)}", field=sorted(extra)[0])
