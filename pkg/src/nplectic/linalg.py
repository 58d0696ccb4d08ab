"""Exact linear algebra over Q.

Matrices are plain lists of Fraction rows.  The production rank path uses
fraction-free Bareiss elimination on integer-cleared rows to keep entries
small; reduced echelon (Gauss-Jordan over Fraction) backs solving, null
spaces and canonical representatives.  Deterministic pivoting throughout:
first usable column, topmost row.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Matrix = list[list[Fraction]]


def _copy(mat: Matrix) -> Matrix:
    return [list(row) for row in mat]


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = _copy(mat)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank_dense(mat: Matrix) -> int:
    """Rank by plain Gauss-Jordan over Fraction (the slow reference path)."""
    return len(rref(mat)[1])


def rank_fraction_free(mat: Matrix) -> int:
    """Rank by integer Bareiss elimination after clearing denominators."""
    work: list[list[int]] = []
    for row in mat:
        den = lcm(*(v.denominator for v in row)) if row else 1
        work.append([int(v * den) for v in row])
    if not work or not work[0]:
        return 0
    rows, cols = len(work), len(work[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                work[i][j] = (work[r][c] * work[i][j] - work[i][c] * work[r][j]) // prev
            work[i][c] = 0
        prev = work[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def solve(mat: Matrix, rhs: list[Fraction]) -> list[Fraction] | None:
    """One exact solution of mat * x = rhs (free variables 0), or None."""
    if not mat:
        return [] if not any(rhs) else None
    cols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None  # a pivot in the augmented column: inconsistent
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def null_space(mat: Matrix, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the kernel, one vector per free column, deterministic order."""
    if not mat:
        assert cols is not None, "need the column count for an empty matrix"
        return [[Fraction(1) if j == i else Fraction(0) for j in range(cols)]
                for i in range(cols)]
    cols = len(mat[0])
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


class Echelon:
    """Growing reduced echelon basis of a subspace of Q^n.

    Supports span membership tests and canonical reduction of vectors
    modulo the subspace (used for quotients and canonical representatives).
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: list[Fraction]) -> list[Fraction]:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec: list[Fraction]) -> bool:
        """Insert vec's residue; returns True if it enlarged the span."""
        v = self.reduce(vec)
        p = next((i for i, a in enumerate(v) if a), None)
        if p is None:
            return False
        inv = Fraction(1) / v[p]
        v = [a * inv for a in v]
        for i, (row, q) in enumerate(zip(self.rows, self.pivots)):
            if row[p]:
                f = row[p]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        return True

    def contains(self, vec: list[Fraction]) -> bool:
        return not any(self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)
