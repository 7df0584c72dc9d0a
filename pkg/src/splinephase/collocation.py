"""Collocation matrices of B-spline shifts and exact rational linear algebra.

Matrices are plain tuples of tuples of Fractions.  Rank is computed by
integer fraction-free elimination (rows are cleared of denominators and
reduced by gcd as they are combined), null spaces by reduced row echelon
form over the rationals with deterministic first-nonzero pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from .bspline import as_fraction, check_degree, _bspline_value
from .sequences import SampleSet

__all__ = [
    "CollocationMatrix",
    "build_collocation",
    "exact_rank",
    "null_space",
    "schoenberg_whitney",
    "to_matrix",
]

Matrix = Tuple[Tuple[Fraction, ...], ...]


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Normalize nested iterables to a rectangular tuple-of-tuples of Fractions."""
    mat = tuple(tuple(as_fraction(v) for v in row) for row in rows)
    widths = {len(row) for row in mat}
    if len(widths) > 1:
        raise ValueError("matrix rows must all have the same length")
    return mat


def _integer_rows(mat: Matrix) -> List[List[int]]:
    rows: List[List[int]] = []
    for row in mat:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v.numerator * (den // v.denominator)) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        rows.append(ints)
    return rows


def exact_rank(matrix) -> int:
    """Rank over the rationals, exact."""
    mat = to_matrix(matrix)
    if not mat or not mat[0]:
        return 0
    rows = _integer_rows(mat)
    ncols = len(rows[0])
    nrows = len(rows)
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        for r in range(rank + 1, nrows):
            v = rows[r][col]
            if v == 0:
                continue
            other = rows[r]
            combined = [pval * other[c] - v * prow[c] for c in range(col + 1, ncols)]
            g = 0
            for w in combined:
                g = gcd(g, w)
            if g > 1:
                combined = [w // g for w in combined]
            rows[r] = [0] * (col + 1) + combined
        rank += 1
        if rank == nrows:
            break
    return rank


def _rref(matrix: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    rows = [list(row) for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def null_space(matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    """Basis of the right null space, possibly empty.

    Each basis vector is scaled so that its first nonzero entry is +1;
    the basis itself comes from the reduced echelon form, one vector per
    free column, so repeated runs agree entry for entry.
    """
    mat = to_matrix(matrix)
    if not mat:
        raise ValueError("null space of an empty matrix is ambiguous; pass at least one row")
    ncols = len(mat[0])
    rows, pivots = _rref(mat)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        first = next(v for v in vec if v != 0)
        basis.append(tuple(v / first for v in vec))
    return tuple(basis)


@dataclass(frozen=True)
class CollocationMatrix:
    """Matrix of B-spline shift values at sample points.

    Rows follow ``row_index`` (the basis shifts, ascending), columns follow
    ``col_index`` (the sample points, ascending); the entry at (n, x) is
    the degree-m B-spline shifted by n evaluated at x.
    """

    entries: Matrix
    row_index: Tuple[int, ...]
    col_index: Tuple[Fraction, ...]

    @property
    def nrows(self) -> int:
        return len(self.row_index)

    @property
    def ncols(self) -> int:
        return len(self.col_index)


def build_collocation(E: SampleSet, m: int) -> CollocationMatrix:
    """Collocation matrix of the windowed basis shifts at the points of E."""
    check_degree(m)
    n1, n2 = E.window
    shifts = tuple(range(n1 - m, n2))
    entries = tuple(
        tuple(_bspline_value(m, x - n) for x in E.points) for n in shifts
    )
    return CollocationMatrix(entries, shifts, E.points)


def schoenberg_whitney(m: int, shifts: Sequence[int], points: Sequence) -> bool:
    """Invertibility test for the square matrix of shifted B-spline values.

    With strictly increasing integer shifts and strictly increasing points
    of equal number, the matrix [B_m(t_i - n_j)] is invertible exactly when
    every diagonal entry B_m(t_i - n_i) is nonzero.
    """
    check_degree(m)
    if len(shifts) != len(points):
        raise ValueError("shifts and points must have the same length")
    shifts = [int(n) for n in shifts]
    pts = [as_fraction(t) for t in points]
    for a, b in zip(shifts, shifts[1:]):
        if a >= b:
            raise ValueError("shifts must be strictly increasing")
    for a, b in zip(pts, pts[1:]):
        if a >= b:
            raise ValueError("points must be strictly increasing")
    return all(_bspline_value(m, t - n) != 0 for n, t in zip(shifts, pts))
