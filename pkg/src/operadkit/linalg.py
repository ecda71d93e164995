"""Exact rational matrix helpers.

Matrices are tuples of tuples of ``Fraction``; an ``r x c`` matrix has ``r``
rows.  Everything here is plain Gaussian elimination over Q; no floats ever.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def make(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(r: int, c: int) -> Matrix:
    return tuple((ZERO,) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch: {shape(a)} * {shape(b)}")
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out.append(
            tuple(
                sum((row[k] * col[k] for k in range(ca)), ZERO) for col in bt
            )
            if bt
            else ()
        )
    return tuple(out)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: Matrix, k) -> Matrix:
    k = Fraction(k)
    return tuple(tuple(k * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    r, c = shape(a)
    return tuple(tuple(a[i][j] for i in range(r)) for j in range(c))


def _echelon(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Row echelon form (in place on a copy) and the pivot column list."""
    rows = [list(r) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon(m)[1])


def column_space_basis(m: Matrix) -> list[int]:
    """Indices of a set of columns forming a basis of the column space."""
    if not m or not m[0]:
        return []
    return _echelon(m)[1]


def solve_right_inverse(e: Matrix) -> Matrix:
    """A right inverse ``R`` with ``e @ R = I`` for a full-row-rank matrix."""
    r, c = shape(e)
    if r == 0:
        return zeros(c, 0)
    aug = tuple(tuple(e[i]) + tuple(identity(r)[i]) for i in range(r))
    rows, pivots = _echelon(aug)
    pivots = [p for p in pivots if p < c]
    if len(pivots) != r:
        raise ValueError("matrix does not have full row rank")
    out = [[ZERO] * r for _ in range(c)]
    for i, p in enumerate(pivots):
        for j in range(r):
            out[p][j] = rows[i][c + j]
    return tuple(tuple(row) for row in out)


def inverse(m: Matrix) -> Matrix:
    r, c = shape(m)
    if r != c:
        raise ValueError("only square matrices can be inverted")
    if r == 0:
        return m
    aug = tuple(tuple(m[i]) + tuple(identity(r)[i]) for i in range(r))
    rows, pivots = _echelon(aug)
    if [p for p in pivots if p < c] != list(range(c)):
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][c:]) for i in range(r))


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """A basis of the null space, as column vectors."""
    r, c = shape(m)
    if c == 0:
        return []
    if r == 0:
        return [tuple(ONE if i == j else ZERO for i in range(c)) for j in range(c)]
    rows, pivots = _echelon(m)
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * c
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def vstack(mats: Sequence[Matrix], cols: int) -> Matrix:
    rows: list[tuple[Fraction, ...]] = []
    for m in mats:
        if m and len(m[0]) != cols:
            raise ValueError("column count mismatch in vstack")
        rows.extend(m)
    return tuple(rows)
