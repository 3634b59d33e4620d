"""Exact dense linear algebra over :data:`QQ` and prime fields.

Matrices and subspaces are immutable.  A :class:`Subspace` always stores the
reduced row-echelon basis of its span, so two subspaces are equal exactly when
their stored bases are equal.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, FieldMismatch, NonSquare
from .fields import Field, Scalar

Vector = tuple


class Matrix:
    """Row-major matrix with entries in one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def _raw(cls, field: Field, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        if not cols:
            return cls.zeros(field, nrows, 0)
        return cls(field, zip(*cols), len(cols)) if nrows else cls._raw(field, (), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(self.field, rows, self.nrows)

    T = property(transpose)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._raw(self.field, tuple(tuple(a + b for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = other.columns()
            z = self.field.zero
            rows = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                rows.append(tuple(sum((a * col[k] for k, a in nz), z) for col in cols))
            return Matrix._raw(self.field, tuple(rows), other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"{self.shape} applied to length {len(v)}")
        z = self.field.zero
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), z) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise NonSquare(str(self.shape))
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and \
            self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"Matrix({self.field}, [{body}])"

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix._raw(self.field, self.rows + other.rows, self.ncols)

    def rref(self):
        return rref(self)

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise NonSquare(f"trace of a {self.nrows}x{self.ncols} matrix")
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    @property
    def rank(self) -> int:
        return rref(self)[2]

    def kernel(self) -> "Subspace":
        return kernel_basis(self)

    def det(self) -> Scalar:
        return det_bareiss(self)


def _rref_rows(field: Field, rows: list[list], ncols: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = field.one / rows[r][c]
        piv = [a * inv for a in rows[r]]
        rows[r] = piv
        nzc = [k for k in range(c, ncols) if piv[k]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nzc:
                        row[k] = row[k] - f * piv[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix):
    """Return ``(R, pivot_columns, rank)`` with ``R`` the reduced row-echelon form.

    ``R`` keeps the shape of ``m``; zero rows sit at the bottom.
    """
    nonzero, pivots = _rref_rows(m.field, m.rows, m.ncols)
    z = m.field.zero
    rows = [tuple(r) for r in nonzero] + [(z,) * m.ncols] * (m.nrows - len(nonzero))
    return Matrix._raw(m.field, tuple(rows), m.ncols), pivots, len(pivots)


def kernel_basis(m: Matrix) -> "Subspace":
    """Null space ``{v : m v = 0}`` as a canonical subspace."""
    nonzero, pivots = _rref_rows(m.field, m.rows, m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    z, o = m.field.zero, m.field.one
    vecs = []
    for f in free:
        v = [z] * m.ncols
        v[f] = o
        for row, pc in zip(nonzero, pivots):
            v[pc] = -row[f]
        vecs.append(v)
    return Subspace.span(m.field, m.ncols, vecs)


def solve(m: Matrix, b: Sequence):
    """One solution ``x`` of ``m x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionMismatch("right-hand side length")
    aug = [list(r) + [m.field(bi)] for r, bi in zip(m.rows, b)]
    nonzero, pivots = _rref_rows(m.field, aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [m.field.zero] * m.ncols
    for row, pc in zip(nonzero, pivots):
        x[pc] = row[m.ncols]
    return tuple(x)


def det_bareiss(m: Matrix) -> Scalar:
    """Determinant by Bareiss fraction-free elimination.

    On integer-valued input every intermediate quotient is exact, so no
    fractions are ever formed beyond the entries themselves.
    """
    if m.nrows != m.ncols:
        raise NonSquare(str(m.shape))
    n = m.nrows
    field = m.field
    if n == 0:
        return field.one
    a = [list(r) for r in m.rows]
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if not a[k][k]:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return field.zero
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) / prev
            row_i[k] = field.zero
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_cofactor(m: Matrix) -> Scalar:
    """Reference determinant by the Leibniz permutation sum (small n only)."""
    if m.nrows != m.ncols:
        raise NonSquare(str(m.shape))
    n = m.nrows
    total = m.field.zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = m.field.one
        for i, j in enumerate(perm):
            term = term * m.rows[i][j]
        total = total + (term if inv % 2 == 0 else -term)
    return total


class Subspace:
    """Linear subspace of ``field^ambient_dim`` stored by its RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: tuple, pivots: tuple):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([field(x) for x in v])
        nonzero, pivots = _rref_rows(field, rows, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in nonzero), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(field, ambient_dim)
        return cls(field, ambient_dim, ident.rows, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def reduce(self, v: Sequence) -> list:
        """Residue of ``v`` after clearing all pivot coordinates."""
        w = [self.field(x) for x in v]
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                for k in range(pc, self.ambient_dim):
                    if row[k]:
                        w[k] = w[k] - f * row[k]
        return w

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coefficients of ``v`` in the stored basis, or ``None`` when ``v`` is outside."""
        if not self.contains(v):
            return None
        return tuple(self.field(v[pc]) for pc in self.pivots)

    def is_subset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = is_subset

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.field == other.field and \
            self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        k = len(self.basis)
        cols = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        rel = kernel_basis(Matrix.from_columns(self.field, cols, self.ambient_dim))
        z = self.field.zero
        vecs = []
        for coeffs in rel.basis:
            v = [z] * self.ambient_dim
            for c, b in zip(coeffs[:k], self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            vecs.append(v)
        return Subspace.span(self.field, self.ambient_dim, vecs)

    __and__ = intersection

    def image(self, m: Matrix) -> "Subspace":
        """Image of this subspace under the linear map ``m``."""
        if m.ncols != self.ambient_dim:
            raise DimensionMismatch(f"map {m.shape} on ambient dimension {self.ambient_dim}")
        return Subspace.span(self.field, m.nrows, [m.apply(b) for b in self.basis])

    def as_matrix(self) -> Matrix:
        return Matrix._raw(self.field, self.basis, self.ambient_dim)

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, [{vecs}])"
