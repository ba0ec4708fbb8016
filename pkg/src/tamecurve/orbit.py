"""Graded orbit algebras R = Π(L, σ_x) given by generators and relations.

Elements are dicts ``{word: coefficient}`` over k, where a word is a
string over the generator letters.  Degree-2 relations are oriented into
rewrite rules by row reduction with the length-lex order X < Y < Z, the
largest word of each relation becoming its leading word.  Confluence is
not proven; it is certified against the ladder by comparing the number
of normal words in each degree with dim Hom(P_1, P_{1+t}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .errors import DegreeBoundExceeded, NonTerminating, PresentationMismatch, UnsupportedShape
from .fields import GaloisField, PrimeField, Field
from .linalg import Echelon, kernel_sparse, rank, solve_linear, span_equal

DEFAULT_MAX_DEGREE = 8
REWRITE_STEP_BOUND = 2_000_000


def word_key(word: str, order: str = "XYZ"):
    return (len(word), [order.index(c) for c in word])


def format_word(word: str) -> str:
    """'XXY' -> 'X^2Y'."""
    if not word:
        return "1"
    out = []
    for letter, group in itertools.groupby(word):
        e = len(list(group))
        out.append(letter if e == 1 else f"{letter}^{e}")
    return "".join(out)


def _format_coefficient(field: Field, c) -> tuple[str, str]:
    """(sign, magnitude) for printing c·word; magnitude '' means 1."""
    s = field.format(c)
    if isinstance(field, PrimeField) and field.p > 2 and int(c) > field.p // 2:
        # symmetric residues: 2 in GF(3) prints as -1
        sign, mag = "-", str(field.p - int(c))
    elif s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
        sign, mag = "-", s[1:]
    else:
        sign, mag = "+", s
    if any(ch in mag for ch in "+-/ "):
        mag = f"({mag})"
    if mag == "1":
        mag = ""
    return sign, mag


def format_poly(field: Field, poly: dict, letters: dict | None = None) -> str:
    """Format {word: coeff} in insertion order, e.g. 'Z^2+3Y^2-2X^2'."""
    parts = []
    for w, c in poly.items():
        if not c:
            continue
        sign, mag = _format_coefficient(field, c)
        body = format_word(w if letters is None else "".join(letters[ch] for ch in w))
        if body == "1":
            body = mag or "1"
        elif mag:
            body = mag + body
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


class GradedPresentation:
    """A graded k-algebra on degree-1 generators with degree-2 relations."""

    def __init__(
        self,
        field: Field,
        generators: str,
        relations: list[dict],
        kind: str = "custom",
        params: dict | None = None,
        max_degree: int = DEFAULT_MAX_DEGREE,
    ):
        self.field = field
        self.generators = generators
        self.relations = [{w: c for w, c in r.items() if c} for r in relations]
        self.kind = kind
        self.params = params or {}
        self.max_degree = max_degree
        self.rules = self._orient(self.relations)
        self._memo: dict[str, dict] = {}
        self._steps = 0

    # -- rules ----------------------------------------------------------------

    def degree2_words(self) -> list[str]:
        return sorted(("".join(p) for p in itertools.product(self.generators, repeat=2)), key=self._key)

    def _key(self, w):
        return word_key(w, self.generators)

    def relation_vector(self, poly: dict) -> list:
        words = self.degree2_words()
        return [poly.get(w, self.field.zero) for w in words]

    def _orient(self, relations) -> dict[str, dict]:
        words = self.degree2_words()
        # reverse order so the largest word gets the smallest column index (pivot first)
        rev = list(reversed(words))
        ech = Echelon(len(rev))
        for r in relations:
            if any(len(w) != 2 for w in r):
                raise ValueError("relations must be homogeneous of degree 2")
            ech.add({rev.index(w): c for w, c in r.items() if c})
        rules = {}
        for pc, row in ech.rref().items():
            lead = rev[pc]
            rules[lead] = {rev[j]: -v for j, v in sorted(row.items(), key=lambda t: -t[0]) if j != pc}
        return rules

    @property
    def leading_words(self) -> set[str]:
        return set(self.rules)

    # -- normal forms ----------------------------------------------------------

    def _nf_word(self, word: str) -> dict:
        memo = self._memo.get(word)
        if memo is not None:
            return memo
        for i in range(len(word) - 1):
            pair = word[i : i + 2]
            rule = self.rules.get(pair)
            if rule is None:
                continue
            self._steps += 1
            if self._steps > REWRITE_STEP_BOUND:
                raise NonTerminating("rewriting exceeded the step bound")
            out: dict = {}
            prefix, suffix = word[:i], word[i + 2 :]
            for repl, c in rule.items():
                for w, d in self._nf_word(prefix + repl + suffix).items():
                    v = out.get(w, self.field.zero) + c * d
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            self._memo[word] = out
            return out
        res = {word: self.field.one}
        self._memo[word] = res
        return res

    def normal_form(self, poly) -> dict:
        if isinstance(poly, str):
            poly = {poly: self.field.one}
        out: dict = {}
        for w, c in poly.items():
            if not c:
                continue
            for v, d in self._nf_word(w).items():
                s = out.get(v, self.field.zero) + c * d
                if s:
                    out[v] = s
                else:
                    out.pop(v, None)
        return dict(sorted(out.items(), key=lambda t: self._key(t[0])))

    def multiply(self, a: dict, b: dict) -> dict:
        prod: dict = {}
        for u, c in a.items():
            for v, d in b.items():
                w = u + v
                prod[w] = prod.get(w, self.field.zero) + c * d
        return self.normal_form(prod)

    def add(self, a: dict, b: dict, scale=1) -> dict:
        out = dict(a)
        for w, c in b.items():
            v = out.get(w, self.field.zero) + c * scale
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return dict(sorted(out.items(), key=lambda t: self._key(t[0])))

    def power(self, a: dict, e: int) -> dict:
        out = {"": self.field.one}
        for _ in range(e):
            out = self.multiply(out, a)
        return out

    def element(self, text_or_poly) -> dict:
        if isinstance(text_or_poly, dict):
            return self.normal_form(text_or_poly)
        return self.normal_form({text_or_poly: self.field.one})

    # -- bases and dimensions ------------------------------------------------------

    def basis(self, d: int) -> list[str]:
        """Normal words of degree d (words avoiding every leading word)."""
        if d > self.max_degree:
            raise DegreeBoundExceeded(f"degree {d} is above the bound {self.max_degree}")
        words = [""]
        for _ in range(d):
            words = [w + g for w in words for g in self.generators if not (w and (w[-1] + g) in self.rules)]
        return sorted(words, key=self._key)

    def dim_degree(self, d: int) -> int:
        return len(self.basis(d))

    def is_commutative(self, max_degree: int = 2) -> bool:
        return all(
            self.multiply({g: self.field.one}, {h: self.field.one}) == self.multiply({h: self.field.one}, {g: self.field.one})
            for g in self.generators
            for h in self.generators
        )

    def commutator_with_generators(self, poly: dict) -> list[dict]:
        one = self.field.one
        return [self.add(self.multiply(poly, {g: one}), self.multiply({g: one}, poly), -1) for g in self.generators]

    def is_central(self, poly: dict) -> bool:
        return all(not c for c in self.commutator_with_generators(poly))

    def centre_basis(self, d: int) -> list[dict]:
        """k-basis of the central elements of degree d."""
        basis = self.basis(d)
        target = self.basis(d + 1)
        index = {w: i for i, w in enumerate(target)}
        k = self.field
        rows: dict[tuple, dict] = {}
        for j, w in enumerate(basis):
            for gi, comm in enumerate(self.commutator_with_generators({w: k.one})):
                for v, c in comm.items():
                    rows.setdefault((gi, index[v]), {})[j] = c
        kernel = kernel_sparse(list(rows.values()), len(basis), k)
        return [self.normal_form({w: c for w, c in zip(basis, vec) if c}) for vec in kernel]

    def in_span(self, poly: dict, spanning: list[dict]) -> bool:
        words = sorted({w for p in spanning + [poly] for w in p}, key=self._key)
        idx = {w: i for i, w in enumerate(words)}
        ech = Echelon(len(words))
        for p in spanning:
            ech.add({idx[w]: c for w, c in p.items()})
        return ech.contains({idx[w]: c for w, c in poly.items()})

    def is_normal(self, poly: dict, degree: int, up_to: int = 4) -> bool:
        """Does poly·R_t = R_t·poly hold for t ≤ up_to - degree?"""
        for t in range(0, max(0, up_to - degree) + 1):
            left = [self.multiply(poly, {w: self.field.one}) for w in self.basis(t)]
            right = [self.multiply({w: self.field.one}, poly) for w in self.basis(t)]
            if not all(self.in_span(r, left) for r in right) or not all(self.in_span(lft, right) for lft in left):
                return False
        return True

    def proportional(self, a: dict, b: dict):
        """λ with a = λ·b, or None."""
        if set(a) != set(b):
            return None
        if not a:
            return self.field.one
        w = next(iter(b))
        lam = a[w] / b[w]
        return lam if all(a[v] == lam * b[v] for v in b) else None

    # -- linear substitutions -------------------------------------------------------

    def substitute(self, images: dict[str, dict], poly: dict) -> dict:
        """Apply the algebra map sending each generator g to images[g]."""
        out: dict = {}
        for w, c in poly.items():
            term = {"": self.field.one}
            for letter in w:
                term = self.multiply(term, images[letter])
            out = self.add(out, term, c)
        return out

    def preserves_relations(self, images: dict[str, dict]) -> bool:
        return all(not self.substitute(images, r) for r in self.relations)

    # -- display ------------------------------------------------------------------------

    def relations_text(self) -> list[str]:
        return [format_poly(self.field, r) for r in self.relations]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "relations": self.relations_text(),
            "rules": {lead: format_poly(self.field, rhs) for lead, rhs in sorted(self.rules.items())},
        }


# -- presentations for the ladder variants --------------------------------------------


def presentation_for(variant, max_degree: int = DEFAULT_MAX_DEGREE) -> GradedPresentation:
    from .ladder import COMM_EXT, QUAT_CHAR2, SKEW_EXT

    k = variant.base
    one = k.one
    c0, a0, a1 = variant.c0, variant.a0, variant.a1
    base = [{"XY": one, "YX": -one}, {"XZ": one, "ZX": -one}]
    if variant.kind == COMM_EXT:
        rels = base + [{"ZY": one, "YZ": one, "XX": a1}, {"ZZ": one, "YY": c0, "XX": -a0}]
    elif variant.kind == SKEW_EXT:
        rels = base + [{"ZY": one, "YZ": -one}, {"ZZ": one, "YY": -c0, "XX": -a0}]
    elif variant.kind == QUAT_CHAR2:
        rels = base + [{"ZY": one, "YZ": -one}, {"ZZ": one, "YY": c0, "XX": a0, "YZ": one}]
    else:
        raise UnsupportedShape(f"no presentation for {variant.kind}")
    params = {"c0": c0, "a0": a0, "a1": a1}
    return GradedPresentation(k, "XYZ", rels, variant.kind, params, max_degree)


def commutativity_expected(variant) -> bool:
    """Commutative iff SkewExt, QuatChar2, or CommExt with char 2 and a1 = 0."""
    from .ladder import COMM_EXT

    if variant.kind != COMM_EXT:
        return True
    return variant.base.characteristic == 2 and not variant.a1


@dataclass
class CertificationRow:
    degree: int
    normal_words: int
    hom_dim: int
    monomial_rank: int

    @property
    def ok(self) -> bool:
        return self.normal_words == self.hom_dim == self.monomial_rank


def certify(presentation: GradedPresentation, ladder, max_t: int = 4, start: int = 1) -> list[CertificationRow]:
    """Compare normal-word counts with Hom(P_start, P_{start+t}) from the ladder."""
    rows = []
    k = presentation.field
    for t in range(max_t + 1):
        words = presentation.basis(t)
        hom = ladder.hom(start, t)
        comps = [ladder.word(start, w).coordinates() for w in words]
        r = rank(comps) if comps and comps[0] else len(words)
        rows.append(CertificationRow(t, len(words), len(hom), r))
    return rows


@dataclass
class DerivedRelations:
    presentation: GradedPresentation
    kernels: dict  # n -> list of relation dicts
    matches: dict  # n -> bool

    @property
    def ok(self) -> bool:
        return all(self.matches.values())

    def to_json(self) -> dict:
        k = self.presentation.field
        return {
            "matches": {str(n): m for n, m in self.matches.items()},
            "kernel": {str(n): [format_poly(k, r) for r in rels] for n, rels in self.kernels.items()},
            "presented": self.presentation.relations_text(),
        }


def relation_kernel(ladder, n: int, generators: str = "XYZ", product=None) -> list[dict]:
    """Kernel of the composition map on the 9 degree-2 words at P_n.

    ``product(n, word)`` overrides the composite; by default it is the
    ladder composition.
    """
    k = ladder.base
    words = sorted(("".join(p) for p in itertools.product(generators, repeat=2)), key=lambda w: word_key(w, generators))
    product = product or ladder.word
    vecs = [product(n, w).coordinates() for w in words]
    A = [[vecs[j][i] for j in range(len(words))] for i in range(len(vecs[0]))]
    kernel = solve_linear(A, field=k)
    return [{w: c for w, c in zip(words, vec) if c} for vec in kernel]


def derive_relations_from_ladder(variant_or_ladder, ns=(1, 2, 3), presentation: GradedPresentation | None = None) -> DerivedRelations:
    from .ladder import Ladder

    ladder = variant_or_ladder if isinstance(variant_or_ladder, Ladder) else Ladder(variant_or_ladder)
    pres = presentation or presentation_for(ladder.variant)
    words = pres.degree2_words()
    presented = [pres.relation_vector(r) for r in pres.relations]
    kernels, matches = {}, {}
    for n in ns:
        rels = relation_kernel(ladder, n)
        kernels[n] = rels
        vecs = [pres.relation_vector(r) for r in rels]
        matches[n] = span_equal(vecs, presented, len(words))
    result = DerivedRelations(pres, kernels, matches)
    if not result.ok:
        bad = next(n for n, m in matches.items() if not m)
        raise PresentationMismatch(f"ladder relations at n={bad} differ from the presentation", kernels[bad])
    return result


def extreme_case_check(pres: GradedPresentation):
    """a0 = 0, a1 = 1: Y² and Z² agree up to a unit; returns that unit or None."""
    y2 = pres.normal_form("YY")
    z2 = pres.normal_form("ZZ")
    return pres.proportional(z2, y2)


def non_normal_witness(pres: GradedPresentation, poly: dict, degree: int, up_to: int = 3):
    """A word w with poly·w outside R·poly (or w·poly outside poly·R), if found."""
    for t in range(0, max(0, up_to - degree) + 1):
        left = [pres.multiply(poly, {w: pres.field.one}) for w in pres.basis(t)]
        right = [pres.multiply({w: pres.field.one}, poly) for w in pres.basis(t)]
        for w, r in zip(pres.basis(t), right):
            if not pres.in_span(r, left):
                return w
        for w, lft in zip(pres.basis(t), left):
            if not pres.in_span(lft, right):
                return w
    return None


# -- skew polynomial rings K[X; Y, α] ----------------------------------------------------


class SkewPolyAlgebra:
    """K[X; Y, α] with K = GF(q^n), α(c) = c^q, X central, Y·c = α(c)·Y.

    Elements are dicts ``{(i, j): c}`` for c·X^i·Y^j with c in K.
    """

    def __init__(self, p: int, m: int, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.p, self.m, self.n = p, m, n
        self.q = p**m
        deg = m * n
        self.K = GaloisField(p, deg) if deg > 1 else PrimeField(p)
        self.kind = "skew"

    @classmethod
    def over(cls, base: Field, n: int) -> "SkewPolyAlgebra":
        if not base.is_finite:
            raise UnsupportedShape("skew polynomial rings are implemented over finite fields only")
        m = getattr(base, "m", 1)
        return cls(base.characteristic, m, n)

    def alpha(self, c, power: int = 1):
        e = pow(self.q, power % self.n if self.n else 0)
        return c**e if power % self.n else c

    def fixed_field(self) -> list:
        return [c for c in self.K.elements() if self.alpha(c) == c]

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for (i, j), c in a.items():
            for (k, l), d in b.items():
                key = (i + k, j + l)
                v = out.get(key, self.K.zero) + c * self.alpha(d, j)
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return dict(sorted(out.items()))

    def monomial(self, i: int, j: int, c=None) -> dict:
        return {(i, j): self.K.one if c is None else c}

    def dim_degree(self, d: int) -> int:
        """k-dimension of the degree-d component: n·(d+1)."""
        return self.n * (d + 1)

    def is_central(self, a: dict) -> bool:
        gens = [self.monomial(1, 0), self.monomial(0, 1), {(0, 0): self._field_generator()}]
        return all(self.multiply(a, g) == self.multiply(g, a) for g in gens)

    def _field_generator(self):
        K = self.K
        return K.gen if isinstance(K, GaloisField) else K.one

    def centre_basis(self, d: int) -> list[dict]:
        """F_p-basis of the degree-d centre (coefficients expanded over F_p)."""
        K = self.K
        deg = getattr(K, "m", 1)
        Fp = PrimeField(self.p)
        basis_K = [K([1 if t == s else 0 for t in range(deg)]) if deg > 1 else K.one for s in range(deg)]
        unknowns = [(j, s) for j in range(d + 1) for s in range(deg)]
        rows: dict = {}
        gens = [self.monomial(0, 1), {(0, 0): self._field_generator()}]
        for col, (j, s) in enumerate(unknowns):
            elem = {(d - j, j): basis_K[s]}
            for gi, g in enumerate(gens):
                comm = _skew_sub(self.multiply(elem, g), self.multiply(g, elem), K)
                for key, c in comm.items():
                    coords = c.c if deg > 1 else (int(c),)
                    for t, v in enumerate(coords):
                        if v % self.p:
                            rows.setdefault((gi, key, t), {})[col] = Fp(v)
        kernel = kernel_sparse(list(rows.values()), len(unknowns), Fp)
        out = []
        for vec in kernel:
            elem: dict = {}
            for (j, s), v in zip(unknowns, vec):
                if v:
                    key = (d - j, j)
                    elem[key] = elem.get(key, K.zero) + basis_K[s] * int(v)
            out.append({key: c for key, c in elem.items() if c})
        return out

    def centre_dimension_over_k(self, d: int) -> int:
        return len(self.centre_basis(d)) // self.m

    def expected_centre_monomials(self, d: int) -> list[tuple[int, int]]:
        """Monomials X^i Y^j of k[X, Y^n] in degree d."""
        return [(d - j, j) for j in range(0, d + 1, self.n)]

    def format(self, a: dict) -> str:
        parts = []
        for (i, j), c in a.items():
            mono = format_word("X" * i + "Y" * j)
            cs = self.K.format(c)
            if mono == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs}){mono}")
        return "+".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "kind": "skew_polynomial",
            "K": f"GF({self.p}^{self.m * self.n})",
            "k": f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})",
            "n": self.n,
            "relations": ["XY-YX", "Xc-cX", "Yc-alpha(c)Y"],
            "centre": f"k[X,Y^{self.n}]",
        }


def _skew_sub(a: dict, b: dict, K) -> dict:
    out = dict(a)
    for key, c in b.items():
        v = out.get(key, K.zero) - c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


# -- function fields -------------------------------------------------------------------


@dataclass
class FunctionFieldPresentation:
    presentation: str
    commutative: bool
    centre: str
    s: int

    def to_json(self) -> dict:
        return {"presentation": self.presentation, "commutative": self.commutative, "centre": self.centre, "s": self.s}


def _fmt_terms(field, terms: list[tuple[Any, str]]) -> str:
    """Format c·monomial terms where the monomial is already a display string."""
    parts = []
    for c, mono in terms:
        if not c:
            continue
        sign, mag = _format_coefficient(field, c)
        body = (mag + mono) if mono else (mag or "1")
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


def function_field_presentation(variant) -> FunctionFieldPresentation:
    from .ladder import COMM_EXT, QUAT_CHAR2, SKEW_EXT

    k = variant.base
    one = k.one
    c0, a0, a1 = variant.c0, variant.a0, variant.a1
    if variant.kind == COMM_EXT:
        if k.characteristic == 2 and not a1:
            # dehomogenise Z² + c0·Y² + a0·X² at Z with U = X/Z, V = Y/Z
            rel = _fmt_terms(k, [(a0, "U^2"), (c0, "V^2"), (one, "")])
            return FunctionFieldPresentation(f"Quot(k[U,V]/({rel}))", True, "itself", 1)
        r1 = _fmt_terms(k, [(one, "UV"), (one, "VU"), (a1, "")])
        r2 = _fmt_terms(k, [(one, "V^2"), (c0, "U^2"), (-a0, "")])
        return FunctionFieldPresentation(f"k<U,V>/({r1}, {r2})", False, "k(U^2)", 2)
    if variant.kind == SKEW_EXT:
        rel = _fmt_terms(k, [(-c0, "U^2"), (-a0, "V^2"), (c0 * a0, "")])
        return FunctionFieldPresentation(f"Quot(k[U,V]/({rel}))", True, "itself", 1)
    if variant.kind == QUAT_CHAR2:
        rel = _fmt_terms(k, [(one, "U^2"), (one, "UV"), (c0, "V^2"), (a0, "")])
        return FunctionFieldPresentation(f"Quot(k[U,V]/({rel}))", True, "itself", 1)
    raise UnsupportedShape(f"no function field for {variant.kind}")


def kronecker_function_field() -> FunctionFieldPresentation:
    return FunctionFieldPresentation("k(T)", True, "k(T)", 1)


def skew_function_field(n: int) -> FunctionFieldPresentation:
    return FunctionFieldPresentation("K(T,alpha)", n == 1, f"k(T^{n})", n)
