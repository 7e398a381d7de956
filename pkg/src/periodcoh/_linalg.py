"""Small exact linear algebra over the rationals.

Matrices are tuples of row tuples; vectors are tuples.  Entries may be
``int`` or ``Fraction``; nothing here ever produces a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = tuple


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), 0)


def vadd(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def normalize(x: Sequence) -> Vector:
    """Collapse integral Fractions to ints so equal vectors print alike."""
    out = []
    for a in x:
        a = Fraction(a)
        out.append(a.numerator if a.denominator == 1 else a)
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = len(b)
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - k))
        off += k
    return tuple(rows)


def _rref(m: Sequence[Sequence]):
    rows = [[Fraction(x) for x in r] for r in m]
    pivots = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(_rref(m)[1])


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    rows = [[Fraction(x) for x in r] for r in m]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m)]
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(normalize(r[n:])) for r in rows)


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column, in column order."""
    if not m:
        assert ncols is not None
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    rows, pivots = _rref(m)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][f]
        basis.append(normalize(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution of m x = b, or None when inconsistent."""
    if not m:
        return None if any(b) else ()
    ncols = len(m[0])
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    rows, pivots = _rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return normalize(x)


def is_integral(m) -> bool:
    if isinstance(m, (int, Fraction)):
        return Fraction(m).denominator == 1
    return all(is_integral(x) for x in m)
