"""Dense exact linear algebra: matrices, RREF, kernels, subspaces.

Everything is immutable and pure.  Subspaces are always stored with a reduced
row echelon basis, so two equal subspaces compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, SingularMatrixError
from .fields import Field, same_field


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple  # row-major scalars
    field: Field

    @staticmethod
    def from_rows(field: Field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        data = tuple(field.of(x) for r in rows for x in r)
        return Matrix(len(rows), ncols, data, field)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        return Matrix(n, n, tuple(field.one if i == j else field.zero
                                  for i in range(n) for j in range(n)), field)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (field.zero,) * (rows * cols), field)

    def at(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
                      self.field)

    def mul(self, other: "Matrix") -> "Matrix":
        F = same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError("matrix product shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = F.zero
                for k in range(self.cols):
                    acc = F.add(acc, F.mul(ri[k], other.at(k, j)))
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out), F)

    def apply(self, vec) -> tuple:
        """Matrix times a coordinate column vector."""
        if len(vec) != self.cols:
            raise DimensionMismatchError("vector length mismatch")
        F = self.field
        return tuple(
            _dot(F, self.row(i), vec) for i in range(self.rows)
        )

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(self.rows, self.cols, tuple(F.mul(c, x) for x in self.data), F)

    def add(self, other: "Matrix") -> "Matrix":
        F = same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix sum shape mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(F.add(a, b) for a, b in zip(self.data, other.data)), F)

    def is_zero(self) -> bool:
        return all(not x for x in self.data)

    def rref(self) -> tuple["Matrix", int, tuple]:
        """Reduced row echelon form; returns (rref, rank, pivot columns)."""
        F = self.field
        m = self.row_list()
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if not F.is_zero(m[i][c])), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = F.inv(m[r][c])
            m[r] = [F.mul(inv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and not F.is_zero(m[i][c]):
                    f = m[i][c]
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix.from_rows(F, m), r, tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def nullspace(self) -> "Subspace":
        """Basis of {x : self @ x = 0} as a Subspace of dimension cols."""
        F = self.field
        red, rank, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [F.zero] * self.cols
            vec[fc] = F.one
            for r, pc in enumerate(pivots):
                vec[pc] = F.neg(red.at(r, fc))
            basis.append(vec)
        return Subspace.span(F, self.cols, basis)

    def solve(self, rhs) -> tuple | None:
        """One solution x of self @ x = rhs, or None when inconsistent."""
        F = self.field
        if len(rhs) != self.rows:
            raise DimensionMismatchError("rhs length mismatch")
        aug = Matrix(self.rows, self.cols + 1,
                     tuple(x for i in range(self.rows)
                           for x in (*self.row(i), F.of(rhs[i]))), F)
        red, rank, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [F.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.at(r, self.cols)
        return tuple(x)

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("determinant of non-square matrix")
        F = self.field
        m = self.row_list()
        det = F.one
        for c in range(self.cols):
            pr = next((i for i in range(c, self.rows) if not F.is_zero(m[i][c])), None)
            if pr is None:
                return F.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = F.neg(det)
            det = F.mul(det, m[c][c])
            inv = F.inv(m[c][c])
            for i in range(c + 1, self.rows):
                if not F.is_zero(m[i][c]):
                    f = F.mul(inv, m[i][c])
                    m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[c])]
        return det

    def is_invertible(self) -> bool:
        return self.rows == self.cols and not self.field.is_zero(self.det())

    def inverse(self) -> "Matrix":
        F = self.field
        if self.rows != self.cols:
            raise DimensionMismatchError("inverse of non-square matrix")
        n = self.rows
        ident = Matrix.identity(F, n)
        aug = Matrix(n, 2 * n, tuple(x for i in range(n)
                                     for x in (*self.row(i), *ident.row(i))), F)
        red, rank, pivots = aug.rref()
        if rank < n or pivots[:n] != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix(n, n, tuple(red.at(i, n + j) for i in range(n) for j in range(n)), F)


def _dot(F: Field, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n, stored via an RREF basis with no zero rows."""

    ambient: int
    basis: Matrix

    @staticmethod
    def span(field: Field, ambient: int, vectors) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if any(len(v) != ambient for v in vecs):
            raise DimensionMismatchError("spanning vector length mismatch")
        if not vecs:
            return Subspace(ambient, Matrix(0, ambient, (), field))
        red, rank, _ = Matrix.from_rows(field, vecs).rref()
        rows = [red.row(i) for i in range(rank)]
        return Subspace(ambient, Matrix(rank, ambient, tuple(x for r in rows for x in r), field))

    @staticmethod
    def zero(field: Field, ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix(0, ambient, (), field))

    @staticmethod
    def full(field: Field, ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(field, ambient))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def vectors(self):
        return [self.basis.row(i) for i in range(self.dim)]

    def contains(self, vec) -> bool:
        F = self.field
        v = [F.of(x) for x in vec]
        for r in range(self.dim):
            row = self.basis.row(r)
            pc = next(j for j, x in enumerate(row) if not F.is_zero(x))
            if not F.is_zero(v[pc]):
                f = v[pc]
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return all(F.is_zero(x) for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        # solve x*A = y*B: nullspace of the (ambient x (k+l)) stacked transpose
        k, l = self.dim, other.dim
        rows = []
        for c in range(self.ambient):
            rows.append([self.basis.at(i, c) for i in range(k)]
                        + [F.neg(other.basis.at(j, c)) for j in range(l)])
        sol = Matrix.from_rows(F, rows).nullspace()
        vecs = []
        for s in sol.vectors():
            combo = [F.zero] * self.ambient
            for i in range(k):
                if not F.is_zero(s[i]):
                    combo = [F.add(a, F.mul(s[i], b)) for a, b in zip(combo, self.basis.row(i))]
            vecs.append(combo)
        return Subspace.span(F, self.ambient, vecs)

    def _check(self, other: "Subspace"):
        same_field(self.field, other.field)
        if self.ambient != other.ambient:
            raise DimensionMismatchError("ambient dimension mismatch")
