"""Exact dense linear algebra over the scalar ring.

Matrices are immutable tuples of row tuples whose entries are scalars
(Fractions or Laurent polynomials sharing one ambient ring).  The
column convention is used throughout the package: the image of the j-th
basis vector under a map is the j-th column of its matrix.

Determinants are computed division-free (subset dynamic programming),
so they stay inside the polynomial ring.  Inverses go through the
adjugate and exist exactly when the determinant is a unit; a nonzero
non-unit determinant raises NotInvertibleError carrying the condition
polynomial, which callers surface as a genericity condition.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .scalars import ONE, ZERO, Scalar, is_zero, scalar_invert

Matrix = tuple[tuple[Scalar, ...], ...]
Vector = tuple[Scalar, ...]


class SingularMatrixError(ArithmeticError):
    """Inverse of a matrix whose determinant is identically zero."""


def from_rows(rows: Iterable[Iterable[Scalar]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    rows, cols = shape(m)
    return tuple(tuple(m[i][j] for i in range(rows)) for j in range(cols))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows_a, cols_a = shape(a)
    rows_b, cols_b = shape(b)
    if cols_a != rows_b:
        raise ValueError(f"cannot multiply {rows_a}x{cols_a} by {rows_b}x{cols_b}")
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc: Scalar = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    rows, cols = shape(m)
    if cols != len(v):
        raise ValueError(f"cannot apply {rows}x{cols} matrix to length-{len(v)} vector")
    out = []
    for row in m:
        acc: Scalar = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def is_zero_matrix(m: Matrix) -> bool:
    return all(is_zero(x) for row in m for x in row)


def determinant(m: Matrix) -> Scalar:
    """Division-free determinant; stays inside the coefficient ring."""
    n = len(m)
    if n and len(m[0]) != n:
        raise ValueError("determinant of a non-square matrix")
    memo: dict[int, Scalar] = {0: ONE}

    def rec(colmask: int) -> Scalar:
        cached = memo.get(colmask)
        if cached is not None:
            return cached
        row = n - bin(colmask).count("1")
        total: Scalar = ZERO
        sign = 1
        for j in range(n):
            if not colmask & (1 << j):
                continue
            entry = m[row][j]
            if entry:
                term = entry * rec(colmask & ~(1 << j))
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[colmask] = total
        return total

    return rec((1 << n) - 1)


def _minor(m: Matrix, drop_row: int, drop_col: int) -> Matrix:
    return tuple(
        tuple(entry for j, entry in enumerate(row) if j != drop_col)
        for i, row in enumerate(m)
        if i != drop_row
    )


def inverse(m: Matrix) -> Matrix:
    """Adjugate inverse.

    Raises SingularMatrixError when the determinant is identically zero
    and NotInvertibleError when it is nonzero but not a unit (the matrix
    is invertible only generically; instantiate parameters to proceed).
    """
    n = len(m)
    det = determinant(m)
    if is_zero(det):
        raise SingularMatrixError("matrix is singular (determinant 0)")
    det_inv = scalar_invert(det)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cof = determinant(_minor(m, j, i))
            if (i + j) % 2:
                cof = -cof
            row.append(cof * det_inv)
        rows.append(tuple(row))
    return tuple(rows)


def mat_map(f: Callable[[Scalar], Scalar], m: Matrix) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in m)


def from_cols(cols: Sequence[Sequence[Scalar]]) -> Matrix:
    """Assemble a matrix from its columns (images of basis vectors)."""
    if not cols:
        return ()
    rows = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(rows))
