"""Exact linear algebra over the base fields.

Dense matrices are :class:`Matrix` objects whose entries may be field
elements or algebra elements.  Elimination works on sparse rows
(``{column: value}`` dicts), which keeps the Hom-space systems of the
ladder fast in pure Python.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import Inconsistent


class Matrix:
    """Rectangular matrix over a ring; ``zero`` fixes the entry ring."""

    __slots__ = ("rows", "nrows", "ncols", "zero")

    def __init__(self, rows: Sequence[Sequence], zero, ncols: int | None = None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if ncols is not None and self.rows and self.ncols != ncols:
            raise ValueError("column count mismatch")
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.zero = zero

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero) -> "Matrix":
        return cls([[zero] * ncols for _ in range(nrows)], zero, ncols)

    @classmethod
    def identity(cls, n: int, zero, one) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], zero, n)

    @classmethod
    def from_function(cls, nrows, ncols, fn, zero) -> "Matrix":
        return cls([[fn(i, j) for j in range(ncols)] for i in range(nrows)], zero, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def map(self, fn, zero=None) -> "Matrix":
        return Matrix([[fn(a) for a in r] for r in self.rows], self.zero if zero is None else zero, self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.zero, self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.zero, self.ncols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.zero, self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix([[a * c for a in r] for r in self.rows], self.zero, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = other.zero if self.nrows == 0 else self.zero
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, zero, other.ncols)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.ncols)], self.zero, self.nrows)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.zero, len(cols))

    def __repr__(self):
        return "Matrix(" + "; ".join(" ".join(str(a) for a in r) for r in self.rows) + ")"


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    zero = a.zero
    rows = [list(r) + [zero] * b.ncols for r in a.rows]
    rows += [[zero] * a.ncols + list(r) for r in b.rows]
    return Matrix(rows, zero, a.ncols + b.ncols)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    return Matrix([list(r) + list(s) for r, s in zip(a.rows, b.rows)], a.zero, a.ncols + b.ncols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(list(a.rows) + list(b.rows), a.zero, a.ncols)


# -- sparse elimination ---------------------------------------------------


class Echelon:
    """Incremental row echelon form over a field.

    Rows are sparse dicts.  ``add`` returns True when the row increased
    the rank.  Pivot rows are normalised to leading coefficient one.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        while True:
            hits = [c for c in row if c in self.pivots]
            if not hits:
                return row
            pc = min(hits)
            v = row[pc]
            for k, pv in self.pivots[pc].items():
                nv = row[k] - v * pv if k in row else -(v * pv)
                if nv:
                    row[k] = nv
                else:
                    del row[k]

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = {k: v * inv for k, v in row.items()}
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rref(self) -> dict[int, dict]:
        """Fully reduced pivot rows (each pivot column zero in all other rows)."""
        order = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in order}
        for c in reversed(order):
            prow = rows[c]
            for d in order:
                if d >= c:
                    break
                r = rows[d]
                v = r.get(c)
                if v:
                    for k, pv in prow.items():
                        nv = r[k] - v * pv if k in r else -(v * pv)
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
        return rows


def _sparse_rows(A) -> list[dict]:
    rows = A.rows if isinstance(A, Matrix) else A
    return [{j: v for j, v in enumerate(r) if v} for r in rows]


def kernel_sparse(rows: Iterable[dict], ncols: int, field) -> list[list]:
    """Basis of {x : row . x = 0 for all rows}, as dense lists."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    red = ech.rref()
    free = [j for j in range(ncols) if j not in red]
    zero, one = field.zero, field.one
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for pc, prow in red.items():
            v = prow.get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank(A, field=None) -> int:
    rows = _sparse_rows(A)
    ncols = A.ncols if isinstance(A, Matrix) else (len(A[0]) if A else 0)
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.rank


def solve_linear(A, b=None, field=None):
    """Solve ``A x = b``.

    With ``b`` omitted, return a basis of the kernel of ``A``.  Otherwise
    return ``(particular_solution, kernel_basis)``; raises
    :class:`Inconsistent` when there is no solution.
    """
    if field is None:
        raise ValueError("solve_linear needs the base field")
    ncols = A.ncols if isinstance(A, Matrix) else (len(A[0]) if A else 0)
    rows = _sparse_rows(A)
    if b is None:
        return kernel_sparse(rows, ncols, field)
    if len(b) != len(rows):
        raise ValueError("right-hand side length mismatch")
    aug = []
    for r, bi in zip(rows, b):
        r = dict(r)
        if bi:
            r[ncols] = bi
        aug.append(r)
    ech = Echelon(ncols + 1)
    for r in aug:
        ech.add(r)
    if ncols in ech.pivots:
        raise Inconsistent("linear system has no solution")
    red = ech.rref()
    x = [field.zero] * ncols
    for pc, prow in red.items():
        v = prow.get(ncols)
        if v:
            x[pc] = v
    return x, kernel_sparse(rows, ncols, field)


def independent(vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return True
    return rank(list(vectors)) == len(vectors)


def in_span(vector: Sequence, basis: Sequence[Sequence]) -> bool:
    ncols = len(vector)
    ech = Echelon(ncols)
    for v in basis:
        ech.add({j: a for j, a in enumerate(v) if a})
    return ech.contains({j: a for j, a in enumerate(vector) if a})


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    ea, eb = Echelon(ncols), Echelon(ncols)
    for v in a:
        ea.add({j: x for j, x in enumerate(v) if x})
    for v in b:
        eb.add({j: x for j, x in enumerate(v) if x})
    if ea.rank != eb.rank:
        return False
    return all(eb.contains({j: x for j, x in enumerate(v) if x}) for v in a)


def inverse(M: Matrix, field) -> Matrix | None:
    """Inverse of a square matrix over a field, or None if singular."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of non-square matrix")
    cols = []
    for j in range(n):
        e = [field.one if i == j else field.zero for i in range(n)]
        try:
            x, ker = solve_linear(M, e, field)
        except Inconsistent:
            return None
        if ker:
            return None
        cols.append(x)
    return Matrix([[cols[j][i] for j in range(n)] for i in range(n)], field.zero, n)
