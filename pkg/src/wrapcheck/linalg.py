"""Small exact linear algebra kit over ``fractions.Fraction``.

Every symbolic module (exterior quotients, graded bases, Lie algebra
cohomology, congruence diagonalization) reduces to row operations on
rational matrices at desk scale, so plain Gaussian elimination is all
we need.  Matrices are lists of lists of Fractions; rows are vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]
Matrix = list[Vector]


def as_fraction_row(row: Iterable) -> Vector:
    return [Fraction(x) for x in row]


def zero_vector(dim: int) -> Vector:
    return [Fraction(0)] * dim


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    mat = [as_fraction_row(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    mat = [as_fraction_row(r) for r in matrix]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            mat[c], mat[pivot_row] = mat[pivot_row], mat[c]
            sign = -sign
        result *= mat[c][c]
        inv = Fraction(1) / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return sign * result


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of the kernel of the linear map with the given matrix rows."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = zero_vector(ncols)
        v[fcol] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[fcol]
        basis.append(v)
    return basis


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def transpose(matrix: Sequence[Sequence]) -> Matrix:
    return [as_fraction_row(col) for col in zip(*matrix)] if matrix else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [
        [sum((Fraction(x) * Fraction(y) for x, y in zip(row, col)), Fraction(0)) for col in bt]
        for row in a
    ]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((Fraction(x) * Fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in a]


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of A x = b, or None if inconsistent."""
    rows = [as_fraction_row(r) + [Fraction(x)] for r, x in zip(a, b)]
    ncols = len(a[0]) if a else 0
    red, pivots = rref(rows)
    x = zero_vector(ncols)
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[-1]
    return x


def right_inverse(a: Sequence[Sequence]) -> Matrix:
    """A right inverse of a matrix with full row rank."""
    m = len(a)
    cols: Matrix = []
    for j in range(m):
        e = [Fraction(1 if i == j else 0) for i in range(m)]
        x = solve(a, e)
        if x is None:
            raise ValueError("matrix does not have full row rank")
        cols.append(x)
    return transpose(cols)


class SparseSubspace:
    """Incrementally maintained reduced echelon span of sparse rows.

    Rows are dicts column -> Fraction.  Equivalent to :class:`Subspace`
    (the reduced echelon form of a row space is unique, so pivots and
    quotient coordinates agree), but elimination only touches the
    support of each row, which matters for large sparse ideals.
    """

    def __init__(self, dim: int, rows: Iterable = ()):  # rows: iterable of dicts
        self.dim = dim
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}
        for r in rows:
            self.add(r)

    def _reduced(self, row) -> dict[int, Fraction]:
        out = {c: Fraction(v) for c, v in row.items() if v != 0}
        while True:
            hit = next((c for c in out if c in self.pivot_rows), None)
            if hit is None:
                return out
            f = out[hit]
            for c, v in self.pivot_rows[hit].items():
                acc = out.get(c, Fraction(0)) - f * v
                if acc == 0:
                    out.pop(c, None)
                else:
                    out[c] = acc

    def add(self, row) -> bool:
        """Insert a row; True if the rank grew."""
        red = self._reduced(row)
        if not red:
            return False
        p = min(red)
        inv = Fraction(1) / red[p]
        red = {c: v * inv for c, v in red.items()}
        for existing in self.pivot_rows.values():
            if p in existing:
                f = existing[p]
                for c, v in red.items():
                    acc = existing.get(c, Fraction(0)) - f * v
                    if acc == 0:
                        existing.pop(c, None)
                    else:
                        existing[c] = acc
        self.pivot_rows[p] = red
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    @property
    def codim(self) -> int:
        return self.dim - len(self.pivot_rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)

    def contains_sparse(self, row) -> bool:
        return not self._reduced(row)

    def contains(self, vec: Sequence) -> bool:
        return self.contains_sparse({i: v for i, v in enumerate(vec) if v != 0})

    def coords_modulo(self, vec: Sequence) -> tuple[Fraction, ...]:
        red = self._reduced({i: v for i, v in enumerate(vec) if v != 0})
        pivot_set = self.pivot_rows.keys()
        return tuple(
            red.get(c, Fraction(0)) for c in range(self.dim) if c not in pivot_set
        )


class Subspace:
    """Row span of a set of vectors, kept in reduced echelon form."""

    def __init__(self, dim: int, rows: Sequence[Sequence] = ()):  # rows may be empty
        self.dim = dim
        self.rows, self.pivots = rref([as_fraction_row(r) for r in rows])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence) -> Vector:
        v = as_fraction_row(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coords_modulo(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of vec in the quotient: entries at non-pivot columns."""
        v = self.reduce(vec)
        pivot_set = set(self.pivots)
        return tuple(v[c] for c in range(self.dim) if c not in pivot_set)

    @property
    def codim(self) -> int:
        return self.dim - len(self.rows)
