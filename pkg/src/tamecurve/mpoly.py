"""Multivariate polynomials over F_p backed by FLINT.

``MPolyRing`` and ``MPoly`` expose the small part of a sparse
polynomial ring interface the rational function fields need: exact
division, gcd, leading terms and iteration over ``(exponents, coeff)``
pairs in lex order.
"""

from __future__ import annotations

from typing import Iterator, Sequence

import flint
from flint.utils.flint_exceptions import DomainError


class MPolyRing:
    __slots__ = ("p", "names", "ctx", "zero", "one", "gens")

    def __init__(self, names: Sequence[str], p: int):
        self.p = p
        self.names = tuple(names)
        self.ctx = flint.nmod_mpoly_ctx.get(self.names, modulus=p)
        self.zero = MPoly(self.ctx.from_dict({}), self)
        self.one = MPoly(self.ctx.constant(1), self)
        self.gens = tuple(MPoly(g, self) for g in self.ctx.gens())

    def __call__(self, value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        if isinstance(value, dict):
            return MPoly(self.ctx.from_dict({tuple(k): int(c) % self.p for k, c in value.items()}), self)
        return MPoly(self.ctx.constant(int(value) % self.p), self)


class MPoly:
    __slots__ = ("f", "ring")

    def __init__(self, f, ring: MPolyRing):
        self.f = f
        self.ring = ring

    def _wrap(self, f) -> "MPoly":
        return MPoly(f, self.ring)

    def _other(self, other):
        return other.f if isinstance(other, MPoly) else int(other) % self.ring.p

    def __add__(self, other):
        return self._wrap(self.f + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.f - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.f)

    def __neg__(self):
        return self._wrap(-self.f)

    def __mul__(self, other):
        return self._wrap(self.f * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(self.f**e)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.f == other.f
        if isinstance(other, int):
            return self.f == self.ring.ctx.constant(other % self.ring.p)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.f.to_dict().items())))

    def __bool__(self):
        return not self.f.is_zero()

    def gcd(self, other: "MPoly") -> "MPoly":
        return self._wrap(self.f.gcd(other.f))

    def exquo(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        return self._wrap(self.f / other.f)

    def sqrt(self) -> "MPoly | None":
        try:
            return self._wrap(self.f.sqrt())
        except DomainError:
            return None

    @property
    def LC(self) -> int:
        return int(self.f.leading_coefficient()) if self else 0

    @property
    def LT(self) -> tuple[tuple[int, ...], int]:
        monoms = self.f.monoms()
        return (tuple(monoms[0]), int(self.f.coeffs()[0])) if monoms else ((0,) * len(self.ring.names), 0)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(tuple(m), int(c)) for m, c in zip(self.f.monoms(), self.f.coeffs())]

    def keys(self) -> Iterator[tuple[int, ...]]:
        return (tuple(m) for m in self.f.monoms())

    def total_degree(self) -> int:
        return max((sum(m) for m in self.f.monoms()), default=-1)

    def __repr__(self):
        return str(self.f)
