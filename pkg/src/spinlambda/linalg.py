"""Small dense linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`~fractions.Fraction`.  Sizes
here never exceed a handful of rows, so plain Gauss-Jordan elimination is
both fast enough and exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]


def as_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational (floats are refused)")


def vec(xs: Sequence) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a
    )


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Row-reduce ``rows`` in place; return pivot columns (first ``ncols`` only)."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    rows = [list(map(as_fraction, r)) for r in m]
    return len(_rref(rows, len(rows[0])))


def solve(a: Matrix, b: Vector) -> Optional[Vector]:
    """Return the unique ``x`` with ``a x = b``, or None if there is none.

    ``a`` may be rectangular; a solution is returned only when the system is
    consistent and ``a`` has full column rank.
    """
    n = len(a[0]) if a else 0
    rows = [list(r) + [bi] for r, bi in zip(a, b)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        return None
    if any(row[n] != 0 for row in rows[len(pivots):]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(r) + list(e) for r, e in zip(a, identity(n))]
    if len(_rref(rows, n)) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    rows = [list(map(as_fraction, r)) for r in a]
    n = len(rows)
    d = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def nullspace(m: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : m x = 0}`` in ``QQ^ncols``."""
    rows = [list(map(as_fraction, r)) for r in m]
    pivots = _rref(rows, ncols) if rows else []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -rows[i][f]
        basis.append(tuple(x))
    return basis
