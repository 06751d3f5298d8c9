"""Jordan cocycles, coboundaries, second cohomology and the automorphism action.

A scalar cocycle is a symmetric n x n matrix; vector-valued cocycles are plain
lists of scalar ones.  Cocycle coordinates flatten the upper triangle in the
fixed order (0,0), (0,1), ..., (0,n-1), (1,1), ..., (n-1,n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .algebra import Algebra, cached_annihilator
from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NiljError,
    SingularMatrixError,
)
from .linalg import Matrix, Subspace


def sym_pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_dim(n: int) -> int:
    return n * (n + 1) // 2


@dataclass(frozen=True)
class Cocycle:
    """Symmetric bilinear map on an algebra, as a symmetric scalar matrix."""

    algebra: Algebra
    mat: Matrix

    def __post_init__(self):
        A, m = self.algebra, self.mat
        if m.rows != A.dim or m.cols != A.dim:
            raise DimensionMismatchError("cocycle matrix shape mismatch")
        if m.field != A.field:
            raise FieldMismatchError("cocycle field mismatch")
        for i in range(A.dim):
            for j in range(i + 1, A.dim):
                if m.at(i, j) != m.at(j, i):
                    raise NiljError("cocycle matrix must be symmetric")

    @staticmethod
    def from_upper(A: Algebra, coords) -> "Cocycle":
        n = A.dim
        coords = list(coords)
        if len(coords) != sym_dim(n):
            raise DimensionMismatchError("upper-triangle coordinate length mismatch")
        data = [[A.field.zero] * n for _ in range(n)]
        for (i, j), c in zip(sym_pairs(n), coords):
            v = A.field.of(c)
            data[i][j] = v
            data[j][i] = v
        return Cocycle(A, Matrix.from_rows(A.field, data))

    @staticmethod
    def delta(A: Algebra, i: int, j: int, coeff=1) -> "Cocycle":
        """The elementary symmetric map taking value coeff at the pair {i, j}."""
        n = A.dim
        coords = [A.field.zero] * sym_dim(n)
        pair = (i, j) if i <= j else (j, i)
        coords[sym_pairs(n).index(pair)] = A.field.of(coeff)
        return Cocycle.from_upper(A, coords)

    @staticmethod
    def zero(A: Algebra) -> "Cocycle":
        return Cocycle.from_upper(A, [A.field.zero] * sym_dim(A.dim))

    def upper(self) -> tuple:
        return tuple(self.mat.at(i, j) for (i, j) in sym_pairs(self.algebra.dim))

    def value(self, x, y):
        """theta(x, y) for coordinate vectors x, y."""
        F = self.algebra.field
        acc = F.zero
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    acc = F.add(acc, F.mul(F.mul(a, b), self.mat.at(i, j)))
        return acc

    def radical(self) -> Subspace:
        return self.mat.nullspace()

    def add(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.algebra, self.mat.add(other.mat))

    def scale(self, c) -> "Cocycle":
        return Cocycle(self.algebra, self.mat.scale(self.algebra.field.of(c)))

    def is_zero(self) -> bool:
        return self.mat.is_zero()


@dataclass(frozen=True)
class CocycleSpaces:
    """All cocycle data of one algebra, in upper-triangle coordinates."""

    algebra: Algebra
    z2: Subspace
    b2: Subspace
    h2_reps: tuple  # Cocycles extending b2 to z2
    h2_assoc_reps: tuple  # sub-basis of the associativity-constrained part

    @property
    def h2_dim(self) -> int:
        return self.z2.dim - self.b2.dim

    @property
    def h2_assoc_dim(self) -> int:
        return len(self.h2_assoc_reps)

    def class_coords(self, theta: Cocycle):
        """Coordinates of theta's class on the h2_reps basis (None if not in z2)."""
        F = self.algebra.field
        vec = theta.upper()
        cols = [c.upper() for c in self.h2_reps] + list(self.b2.vectors())
        if not cols:
            return () if self.z2.contains(vec) else None
        m = Matrix.from_rows(F, [[col[r] for col in cols] for r in range(len(vec))])
        sol = m.solve(vec)
        if sol is None:
            return None
        return tuple(sol[: len(self.h2_reps)])

    def cocycle_from_class(self, coords) -> Cocycle:
        F = self.algebra.field
        out = Cocycle.zero(self.algebra)
        for c, rep in zip(coords, self.h2_reps):
            if c:
                out = out.add(rep.scale(c))
        return out


def cocycle_space(A: Algebra) -> Subspace:
    """Solutions of the linearized-identity constraint, instantiated on basis quadruples."""
    F = A.field
    n = A.dim
    pairs = sym_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    rows = []

    def add_pair(row, i, j, coef):
        row[index[(i, j) if i <= j else (j, i)]] = F.add(row[index[(i, j) if i <= j else (j, i)]], coef)

    def add_vec_pair(row, u, v, sign):
        # theta(u, v) for coordinate vectors u, v
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    add_pair(row, i, j, F.mul(sign, F.mul(a, b)))

    one, mone = F.one, F.neg(F.one)
    for a, b, c in combinations_with_replacement(range(n), 3):
        for d in range(n):
            row = [F.zero] * len(pairs)
            for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
                w = A.vec_mul(_unit(A, d), A.basis_product(y, z))
                for m, cm in enumerate(w):
                    if cm:
                        add_pair(row, x, m, cm)
            for (x, y), (z, w) in (((a, b), (c, d)), ((b, c), (a, d)), ((a, c), (b, d))):
                add_vec_pair(row, A.basis_product(x, y), A.basis_product(z, w), mone)
            if any(x for x in row):
                rows.append(row)
    if not rows:
        return Subspace.full(F, len(pairs))
    return Matrix.from_rows(F, rows).nullspace()


def coboundary_space(A: Algebra) -> Subspace:
    """Span of df for the n coordinate functionals f, (df)(x,y) = f(x o y)."""
    F = A.field
    n = A.dim
    vecs = []
    for k in range(n):
        vecs.append([A.sc(i, j).get(k, F.zero) for (i, j) in sym_pairs(n)])
    return Subspace.span(F, sym_dim(n), vecs)


def associativity_constraint_space(A: Algebra) -> Subspace:
    """Symmetric maps with theta(x o y, z) = theta(x, y o z) on all basis triples."""
    F = A.field
    n = A.dim
    pairs = sym_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    rows = []
    for i, j, k in product(range(n), repeat=3):
        row = [F.zero] * len(pairs)
        for m, cm in enumerate(A.basis_product(i, j)):
            if cm:
                p = (m, k) if m <= k else (k, m)
                row[index[p]] = F.add(row[index[p]], cm)
        for m, cm in enumerate(A.basis_product(j, k)):
            if cm:
                p = (i, m) if i <= m else (m, i)
                row[index[p]] = F.sub(row[index[p]], cm)
        if any(x for x in row):
            rows.append(row)
    if not rows:
        return Subspace.full(F, len(pairs))
    return Matrix.from_rows(F, rows).nullspace()


@lru_cache(maxsize=None)
def h2(A: Algebra) -> CocycleSpaces:
    """Cocycles, coboundaries and deterministic cohomology representatives.

    Representatives extend a basis of the coboundary space through the cocycle
    space, greedily in the fixed upper-triangle pivot order, so repeated runs
    produce identical output.
    """
    F = A.field
    z2 = cocycle_space(A)
    b2 = coboundary_space(A)
    reps = []
    current = [list(v) for v in b2.vectors()]
    base_dim = b2.dim
    for v in z2.vectors():
        grown = Subspace.span(F, z2.ambient, current + [list(v)])
        if grown.dim > base_dim + len(reps):
            reps.append(Cocycle.from_upper(A, v))
            current.append(list(v))
    assoc = associativity_constraint_space(A).intersect(z2)
    assoc_reps = []
    current = [list(v) for v in b2.vectors()]
    for v in assoc.vectors():
        grown = Subspace.span(F, z2.ambient, current + [list(v)])
        if grown.dim > base_dim + len(assoc_reps):
            assoc_reps.append(Cocycle.from_upper(A, v))
            current.append(list(v))
    return CocycleSpaces(A, z2, b2, tuple(reps), tuple(assoc_reps))


def radical(thetas) -> Subspace:
    """Joint radical of a (vector-valued) cocycle, as the intersection of kernels."""
    thetas = list(thetas)
    if not thetas:
        raise NiljError("radical of an empty cocycle list is undefined")
    A = thetas[0].algebra
    for t in thetas:
        if t.algebra != A:
            raise FieldMismatchError("cocycles on different algebras")
    out = Subspace.full(A.field, A.dim)
    for t in thetas:
        out = out.intersect(t.radical())
    return out


def act(phi: Matrix, theta: Cocycle) -> Cocycle:
    """Pullback (phi theta)(x, y) = theta(phi x, phi y) = phi^T M phi."""
    if not phi.is_invertible():
        raise SingularMatrixError("action requires an invertible matrix")
    return Cocycle(theta.algebra, phi.transpose().mul(theta.mat).mul(phi))


def is_automorphism(A: Algebra, phi: Matrix) -> bool:
    """True iff phi is invertible and multiplicative (columns are basis images)."""
    if phi.rows != A.dim or phi.cols != A.dim:
        raise DimensionMismatchError("automorphism matrix shape mismatch")
    if phi.field != A.field:
        raise FieldMismatchError("automorphism field mismatch")
    if not phi.is_invertible():
        return False
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = phi.apply(A.basis_product(i, j))
            rhs = A.vec_mul(phi.col(i), phi.col(j))
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def has_nontrivial_1dim_extension(A: Algebra) -> bool:
    """Whether some cocycle has radical meeting the annihilator trivially.

    Decided exactly: if a nonzero central element pairs trivially with every
    basis cocycle, no cocycle works.  Otherwise a witness combination is
    located by deterministic small-coefficient search.
    """
    F = A.field
    ann = cached_annihilator(A)
    if ann.is_zero():
        return True
    spaces = h2(A)
    basis = [Cocycle.from_upper(A, v) for v in spaces.z2.vectors()]
    if not basis:
        return False
    # kernel test: z in the radical of every basis cocycle?
    rows = []
    for z in ann.vectors():
        row = []
        for theta in basis:
            row.extend(theta.mat.apply(z))
        rows.append(row)
    # rank < dim ann means some nonzero central z pairs trivially with all of z2
    if Matrix.from_rows(F, rows).rank() < ann.dim:
        return False
    for combo in _witness_combos(F, len(basis)):
        theta = Cocycle.zero(A)
        for c, b in zip(combo, basis):
            if c:
                theta = theta.add(b.scale(c))
        if radical([theta]).intersect(ann).is_zero():
            return True
    raise NiljError("witness search exhausted without finding a combination")


def _witness_combos(F, k: int):
    # single basis vectors, then Vandermonde mixes, then bounded lexicographic search
    for i in range(k):
        yield tuple(F.one if j == i else F.zero for j in range(k))
    for t in range(1, 21):
        yield tuple(F.of(t**j) for j in range(k))
    small = [F.of(v) for v in range(5)]
    for combo in product(small, repeat=min(k, 6)):
        yield tuple(combo) + (F.zero,) * (k - min(k, 6))


def parse_cocycle(A: Algebra, text: str) -> Cocycle:
    """Parse cocycle syntax like "d(b,d)+1*d(c,c)" or "2*d(1,3), -1/2*d(a,b)".

    Terms are separated by "+" or ","; each term is an optional scalar
    coefficient (with "*") applied to d(x,y) where x, y are basis names or
    1-based indices.
    """
    F = A.field
    out = Cocycle.zero(A)
    body = text.replace("-", "+-").strip()
    # split on top-level + and , but keep commas inside d(...) intact
    terms, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+," and depth == 0:
            if cur.strip():
                terms.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        terms.append(cur.strip())
    for term in terms:
        if not term:
            continue
        coef = F.one
        rest = term
        neg = rest.startswith("-")
        if neg:
            rest = rest[1:].strip()
        if "*" in rest:
            cs, rest = rest.split("*", 1)
            coef = F.parse(cs)
        if not (rest.startswith("d(") or rest.startswith("delta(")) or not rest.endswith(")"):
            raise NiljError(f"bad cocycle term {term!r}")
        inner = rest[rest.index("(") + 1:-1]
        xs = [s.strip() for s in inner.split(",")]
        if len(xs) != 2:
            raise NiljError(f"bad cocycle term {term!r}")
        idx = []
        for s in xs:
            if s.isdigit():
                k = int(s) - 1
                if not 0 <= k < A.dim:
                    raise NiljError(f"index out of range in {term!r}")
                idx.append(k)
            else:
                idx.append(A.index_of(s))
        if neg:
            coef = F.neg(coef)
        out = out.add(Cocycle.delta(A, idx[0], idx[1], coef))
    return out


def _unit(A: Algebra, i: int) -> tuple:
    return tuple(A.field.one if k == i else A.field.zero for k in range(A.dim))
