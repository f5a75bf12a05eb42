"""Small exact matrix helpers over any field-like element type.

Matrices are tuples of tuples.  Element types must support +, -, *, /,
``is_zero()`` and equality; the ``ring`` handle provides ``zero()`` and
``one()``.  Everything is straightforward Gauss-Jordan at desk scale.
"""

from __future__ import annotations


class SingularMatrixError(ZeroDivisionError):
    pass


def freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def identity(ring, n: int) -> tuple:
    one, zero = ring.one(), ring.zero()
    return freeze([[one if i == j else zero for j in range(n)] for i in range(n)])


def zero_matrix(ring, n: int, m: int | None = None) -> tuple:
    zero = ring.zero()
    m = n if m is None else m
    return freeze([[zero] * m for _ in range(n)])


def mat_add(a, b) -> tuple:
    return freeze([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_sub(a, b) -> tuple:
    return freeze([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_mul(a, b) -> tuple:
    n, k = len(a), len(b)
    m = len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for s in range(1, k):
                acc = acc + a[i][s] * b[s][j]
            row.append(acc)
        out.append(row)
    return freeze(out)


def mat_scale(a, c) -> tuple:
    return freeze([[x * c for x in row] for row in a])


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_inv(ring, a) -> tuple:
    """Inverse by Gauss-Jordan; raises SingularMatrixError when det = 0."""
    n = len(a)
    aug = [list(row) + list(idr) for row, idr in zip(a, identity(ring, n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv = ring.one() / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return freeze([row[n:] for row in aug])


def det(ring, a):
    """Determinant by fraction elimination (entries live in a field)."""
    n = len(a)
    m = [list(row) for row in a]
    result = ring.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ring.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = ring.zero() - result
        pivot = m[col][col]
        result = result * pivot
        inv = ring.one() / pivot
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def gf_nullspace(fq, rows: list[list[int]]) -> list[list[int]]:
    """Basis of the right nullspace of a matrix over GF(q) (int codes)."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = fq.inv(m[r][c])
        m[r] = [fq.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [fq.sub(x, fq.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = fq.neg(m[i][fc])
        basis.append(vec)
    return basis
