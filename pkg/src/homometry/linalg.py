"""Exact rational vectors, square matrices, and integer normal forms.

Conventions used throughout the package:

* scalars are ``fractions.Fraction`` (floats are rejected at the boundary),
* a vector is a tuple of Fractions,
* a matrix is a tuple of *column* vectors, so ``mat_vec(M, x)`` is the linear
  combination of the columns of M with coefficients x.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SingularMatrixError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def frac(x) -> Fraction:
    """Coerce an exact value (int, Fraction or 'p/q' string) to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def vec(coords: Iterable) -> Vec:
    return tuple(frac(c) for c in coords)


def mat(columns: Iterable[Iterable]) -> Mat:
    cols = tuple(vec(c) for c in columns)
    d = len(cols[0]) if cols else 0
    if any(len(c) != d for c in cols):
        raise ValueError("ragged matrix")
    return cols


def identity(d: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    c = frac(c)
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Mat, x: Sequence) -> Vec:
    d = len(m[0])
    out = [Fraction(0)] * d
    for col, c in zip(m, x, strict=True):
        c = frac(c)
        if c:
            for i in range(d):
                out[i] += c * col[i]
    return tuple(out)


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(mat_vec(a, col) for col in b)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m, strict=True))


def is_integral(m: Mat) -> bool:
    return all(e.denominator == 1 for col in m for e in col)


def det(m: Mat) -> Fraction:
    """Exact determinant via fraction-free row elimination."""
    d = len(m)
    if any(len(c) != d for c in m):
        raise ValueError("determinant of a non-square matrix")
    if d == 0:
        return Fraction(1)
    if d == 1:
        return m[0][0]
    if d == 2:
        return m[0][0] * m[1][1] - m[1][0] * m[0][1]
    rows = [list(col[i] for col in m) for i in range(d)]
    sign = 1
    result = Fraction(1)
    for k in range(d):
        pivot_row = next((r for r in range(k, d) if rows[r][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        piv = rows[k][k]
        result *= piv
        for r in range(k + 1, d):
            factor = rows[r][k] / piv
            if factor:
                for c in range(k, d):
                    rows[r][c] -= factor * rows[k][c]
    return sign * result


def _minor(m: Mat, drop_row: int, drop_col: int) -> Mat:
    return tuple(
        tuple(col[i] for i in range(len(col)) if i != drop_row)
        for j, col in enumerate(m)
        if j != drop_col
    )


def adjugate(m: Mat) -> Mat:
    """Matrix Adj with m @ Adj = det(m) * identity, via cofactors."""
    d = len(m)
    if d == 1:
        return ((Fraction(1),),)
    cols = []
    for j in range(d):
        col = []
        for i in range(d):
            # adj[i][j] = cofactor C[j][i] = (-1)^(i+j) * minor(row j, col i)
            c = det(_minor(m, j, i))
            col.append(c if (i + j) % 2 == 0 else -c)
        cols.append(tuple(col))
    return tuple(cols)


def solve(m: Mat, v: Vec) -> Vec:
    """Exact solution x of m @ x = v; raises SingularMatrixError."""
    d = len(m)
    rows = [[m[j][i] for j in range(d)] + [frac(v[i])] for i in range(d)]
    for k in range(d):
        pivot_row = next((r for r in range(k, d) if rows[r][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("singular matrix in solve")
        rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
        piv = rows[k][k]
        rows[k] = [e / piv for e in rows[k]]
        for r in range(d):
            if r != k and rows[r][k]:
                factor = rows[r][k]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[k])]
    return tuple(rows[i][d] for i in range(d))


def inverse(m: Mat) -> Mat:
    d = len(m)
    cols = []
    for j in range(d):
        e = tuple(Fraction(int(i == j)) for i in range(d))
        cols.append(solve(m, e))
    return tuple(cols)


def dual_basis(b: Mat) -> Mat:
    """Columns b_i* with <b_i, b_j*> = delta_ij (inverse transpose)."""
    return transpose(inverse(b))


def _column_hnf(grid: list[list[int]], track_u: bool):
    """Column-reduce an integer row-major grid to lower-triangular HNF.

    Entries become nonnegative with the diagonal strictly dominating its row.
    Returns (grid, u_grid) where u_grid accumulates the column operations.
    """
    nrows = len(grid)
    ncols = len(grid[0])
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track_u else None

    def col_combine(j1, j2, a, b, c, dd):
        # (col j1, col j2) <- (a*col j1 + b*col j2, c*col j1 + d*col j2)
        for g in (grid, u) if track_u else (grid,):
            for row in g:
                x, y = row[j1], row[j2]
                row[j1] = a * x + b * y
                row[j2] = c * x + dd * y

    pivot_col = 0
    for i in range(nrows):
        if pivot_col >= ncols:
            break
        j_nz = next((j for j in range(pivot_col, ncols) if grid[i][j] != 0), None)
        if j_nz is None:
            continue
        if j_nz != pivot_col:
            col_combine(pivot_col, j_nz, 0, 1, 1, 0)
        for j in range(pivot_col + 1, ncols):
            if grid[i][j] == 0:
                continue
            p, q = grid[i][pivot_col], grid[i][j]
            g, x, y = _xgcd(p, q)
            # unimodular: det of [[x, -q//g], [y, p//g]] is (xp+yq)/g = 1
            col_combine(pivot_col, j, x, y, -(q // g), p // g)
        if grid[i][pivot_col] < 0:
            for g in (grid, u) if track_u else (grid,):
                for row in g:
                    row[pivot_col] = -row[pivot_col]
        piv = grid[i][pivot_col]
        for j in range(pivot_col):
            q = grid[i][j] // piv
            if q:
                for g in (grid, u) if track_u else (grid,):
                    for row in g:
                        row[j] -= q * row[pivot_col]
        pivot_col += 1
    return grid, u, pivot_col


def _xgcd(a: int, b: int):
    """Returns (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(m: Mat) -> tuple[Mat, Mat]:
    """Column-style Hermite normal form of a nonsingular integer matrix.

    Returns (H, U) with H = m @ U, U unimodular, H lower triangular with
    nonnegative entries whose diagonal strictly dominates its row.
    """
    d = len(m)
    if not is_integral(m):
        raise ValueError("hnf requires an integral matrix")
    if det(m) == 0:
        raise SingularMatrixError("hnf of a singular matrix")
    grid = [[int(m[j][i]) for j in range(d)] for i in range(d)]
    grid, u, _ = _column_hnf(grid, track_u=True)
    h_cols = mat(tuple(tuple(grid[i][j] for i in range(d)) for j in range(d)))
    u_cols = mat(tuple(tuple(u[i][j] for i in range(d)) for j in range(d)))
    return h_cols, u_cols


def hnf_basis(vectors: Sequence[Vec]) -> Mat:
    """Lower-triangular basis of the integer span of rational vectors.

    Returns the independent columns only, so the result has full column
    rank equal to the rank of the span.
    """
    vectors = [vec(v) for v in vectors if not is_zero(vec(v))]
    if not vectors:
        return ()
    d = len(vectors[0])
    scale = math.lcm(*[e.denominator for v in vectors for e in v])
    grid = [[int(v[i] * scale) for v in vectors] for i in range(d)]
    grid, _, rank = _column_hnf(grid, track_u=False)
    cols = []
    for j in range(rank):
        cols.append(tuple(Fraction(grid[i][j], scale) for i in range(d)))
    return tuple(cols)


def integer_kernel(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Basis of the integer solutions of rows @ z = 0 (z integral).

    Column-reducing the constraint matrix with a tracked unimodular U makes
    the kernel exactly the U-columns beyond the rank.
    """
    rows = [list(map(int, r)) for r in rows] if not isinstance(rows[0], int) else [list(map(int, rows))]
    ncols = len(rows[0])
    grid = [list(r) for r in rows]
    _, u, rank = _column_hnf(grid, track_u=True)
    return tuple(
        tuple(u[i][j] for i in range(ncols)) for j in range(rank, ncols)
    )


def primitive_integer_direction(v: Vec) -> tuple[int, ...]:
    """The primitive integer vector positively parallel to a rational v != 0."""
    v = vec(v)
    if is_zero(v):
        raise ValueError("zero vector has no direction")
    scale = math.lcm(*[e.denominator for e in v])
    ints = [int(e * scale) for e in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def rank_of(vectors: Sequence[Vec]) -> int:
    """Rank of a list of rational vectors (exact Gaussian elimination)."""
    basis: list[list[Fraction]] = []
    for v in vectors:
        row = list(v)
        for b in basis:
            lead = next(i for i, e in enumerate(b) if e != 0)
            if row[lead]:
                f = row[lead] / b[lead]
                row = [a - f * c for a, c in zip(row, b)]
        if any(e != 0 for e in row):
            basis.append(row)
    return len(basis)


def nullspace(rows: Sequence[Vec]) -> tuple[Vec, ...]:
    """Basis of {x : <r, x> = 0 for all rows r}, exact."""
    if not rows:
        raise ValueError("nullspace needs at least the ambient dimension")
    d = len(rows[0])
    mat_rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        pr = next((i for i in range(r, len(mat_rows)) if mat_rows[i][c] != 0), None)
        if pr is None:
            continue
        mat_rows[r], mat_rows[pr] = mat_rows[pr], mat_rows[r]
        piv = mat_rows[r][c]
        mat_rows[r] = [e / piv for e in mat_rows[r]]
        for i in range(len(mat_rows)):
            if i != r and mat_rows[i][c]:
                f = mat_rows[i][c]
                mat_rows[i] = [a - f * b for a, b in zip(mat_rows[i], mat_rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    out = []
    for fc in free:
        x = [Fraction(0)] * d
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -mat_rows[i][fc]
        out.append(tuple(x))
    return tuple(out)
