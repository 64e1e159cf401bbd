"""Exact linear algebra over Q, over Z, and over user-supplied exact fields.

Matrices are lists of lists.  Nothing here is asymptotically clever; sizes in
this package stay far below the point where it would matter, and exactness of
every sign decision is the requirement that drives the design.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

# ---------------------------------------------------------------------------
# generic helpers


def dims(matrix):
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    return rows, cols


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = dims(a)
    k2, m = dims(b)
    assert k == k2
    return [[sum(a[i][x] * b[x][j] for x in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    n, m = dims(a)
    return [[a[i][j] for i in range(n)] for j in range(m)]


def to_fractions(a):
    return [[Fraction(x) for x in row] for row in a]


def mat_eq(a, b):
    return dims(a) == dims(b) and all(
        a[i][j] == b[i][j] for i in range(len(a)) for j in range(len(a[0]))
    )


# ---------------------------------------------------------------------------
# integer determinants (Bareiss fraction-free elimination)


def det_int(matrix):
    """Determinant of a square integer matrix, exactly."""
    n, m = dims(matrix)
    if n != m:
        raise DomainError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# rational elimination


def rational_inverse(matrix):
    """Inverse of a square matrix over Q (entries coerced to Fraction)."""
    n, m = dims(matrix)
    if n != m:
        raise DomainError("inverse requires a square matrix")
    a = to_fractions(matrix)
    inv = identity(n, Fraction(1), Fraction(0))
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def kernel_basis(matrix, zero=Fraction(0), one=Fraction(1)):
    """Basis of the right kernel of a matrix over an exact field.

    Entries must support +, -, *, /, equality with ``zero``.  Returns a list
    of column vectors.
    """
    n, m = dims(matrix)
    a = [row[:] for row in matrix]
    pivots = []
    row = 0
    for col in range(m):
        pivot = next((r for r in range(row, n) if a[r][col] != zero), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        scale = a[row][col]
        a[row] = [x / scale for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != zero:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = zero - a[r][fc]
        basis.append(v)
    return basis


def symmetric_signature(matrix):
    """(n_plus, n_minus, n_zero) of a symmetric matrix over Q.

    Congruence diagonalization with exact pivoting; when the whole remaining
    diagonal vanishes, a row addition manufactures a nonzero pivot (valid
    away from characteristic 2).
    """
    return hermitian_signature(to_fractions(matrix),
                               conj=lambda x: x,
                               sign_of=rational_sign)


def rational_sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def hermitian_signature(matrix, conj, sign_of):
    """Inertia (n_plus, n_minus, n_zero) of a hermitian matrix by congruence
    elimination over an exact field.

    ``conj`` is the field involution (identity for symmetric real cases) and
    ``sign_of`` decides signs of the (involution-fixed) pivots.  Entries must
    support +, -, *, /, and == comparisons with each other and with 0-like
    elements produced by their own arithmetic.
    """
    n, _ = dims(matrix)
    if any(len(row) != n for row in matrix):
        raise DomainError("hermitian signature requires a square matrix")
    h = [row[:] for row in matrix]
    plus = minus = zero = 0

    def row_op(i, j, factor):
        # row_i += factor * row_j, then the conjugate column operation
        h[i] = [x + factor * y for x, y in zip(h[i], h[j])]
        cf = conj(factor)
        for r in range(n):
            h[r][i] = h[r][i] + cf * h[r][j]

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        for r in range(n):
            h[r][i], h[r][j] = h[r][j], h[r][i]

    for k in range(n):
        if _is_zero(h[k][k]):
            j = next((j for j in range(k + 1, n) if not _is_zero(h[j][j])), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if not _is_zero(h[k][j])), None)
                if j is None:
                    zero += 1
                    continue
                # adding H_kj times row j (and the conjugate column op)
                # turns the pivot into 2|H_kj|^2 > 0
                row_op(k, j, h[k][j])
        pivot = h[k][k]
        s = sign_of(pivot)
        assert s != 0
        if s > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if not _is_zero(h[i][k]):
                row_op(i, k, -(h[i][k] / pivot))
    return plus, minus, zero


def _is_zero(x):
    return not x


# ---------------------------------------------------------------------------
# Smith normal form over Z


def smith_normal_form(matrix):
    """Smith normal form with transforms: returns (d, u, w) where
    u * matrix * w is diagonal with the entries of ``d`` (nonnegative,
    each dividing the next) and u, w are unimodular.

    Pivot rule is deterministic: smallest nonzero absolute value, ties
    broken by position.
    """
    n, m = dims(matrix)
    a = [row[:] for row in matrix]
    u = identity(n)
    w = identity(m)

    def row_add(i, j, q):
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def col_add(i, j, q):
        for r in range(n):
            a[r][i] += q * a[r][j]
        for r in range(m):
            w[r][i] += q * w[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(m):
            w[r][i], w[r][j] = w[r][j], w[r][i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(k):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                if a[i][j] != 0:
                    key = (abs(a[i][j]), i, j)
                    if best is None or key < best:
                        best = key
        return None if best is None else (best[1], best[2])

    for k in range(min(n, m)):
        while True:
            loc = find_pivot(k)
            if loc is None:
                break
            i, j = loc
            if i != k:
                row_swap(k, i)
            if j != k:
                col_swap(k, j)
            dirty = False
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    q = a[r][k] // a[k][k]
                    row_add(r, k, -q)
                    if a[r][k] != 0:
                        dirty = True
            for c in range(k + 1, m):
                if a[k][c] != 0:
                    q = a[k][c] // a[k][k]
                    col_add(c, k, -q)
                    if a[k][c] != 0:
                        dirty = True
            if dirty:
                continue
            # row and column are clear; enforce divisibility of the rest
            offender = None
            for r in range(k + 1, n):
                for c in range(k + 1, m):
                    if a[r][c] % a[k][k] != 0:
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, 1)
        if k < min(n, m) and a[k][k] < 0:
            row_negate(k)

    d = [a[i][i] for i in range(min(n, m))]
    return d, u, w


def integer_kernel_basis(matrix):
    """Basis of the lattice {v in Z^m : matrix @ v = 0}."""
    n, m = dims(matrix)
    d, _u, w = smith_normal_form(matrix)
    rank = sum(1 for x in d if x != 0)
    return [[w[r][c] for r in range(m)] for c in range(rank, m)]
