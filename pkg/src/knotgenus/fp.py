"""Small-prime linear algebra: vectors and subspaces of (Z_p)^n.

Vectors are tuples of ints reduced mod p.  Subspaces carry a canonical
row-reduced basis so they hash and compare structurally; all enumeration
orders are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DomainError


def vec_add(x, y, p):
    return tuple((a + b) % p for a, b in zip(x, y))


def vec_sub(x, y, p):
    return tuple((a - b) % p for a, b in zip(x, y))


def vec_scale(c, x, p):
    return tuple((c * a) % p for a in x)


def vec_zero(n):
    return (0,) * n


def rref(rows, p):
    """Canonical reduced row echelon form mod p; zero rows dropped."""
    mat = [list(r) for r in rows]
    n_cols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(inv * x) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p != 0:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in mat[:r]], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of (Z_p)^n in canonical RREF basis."""

    p: int
    ambient_dim: int
    basis: tuple = field(default=())

    @staticmethod
    def spanned_by(vectors, p, ambient_dim):
        rows, _ = rref(vectors, p) if vectors else ([], [])
        return Subspace(p, ambient_dim, tuple(rows))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def order(self):
        return self.p**self.dim

    def contains(self, vector):
        v = [x % self.p for x in vector]
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % self.p for x, y in zip(v, row)]
        return not any(v)

    def elements(self):
        """All vectors, in deterministic order of coefficient tuples."""
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = vec_zero(self.ambient_dim)
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_add(v, vec_scale(c, row, self.p), self.p)
            yield v

    def is_subspace_of(self, other):
        return all(other.contains(row) for row in self.basis)

    def intersection(self, other):
        assert self.ambient_dim == other.ambient_dim and self.p == other.p
        small, large = (self, other) if self.dim <= other.dim else (other, self)
        vectors = [v for v in small.elements() if large.contains(v)]
        return Subspace.spanned_by(vectors, self.p, self.ambient_dim)

    def coset_representatives(self, subgroup):
        """One representative per coset of ``subgroup`` inside self."""
        seen = set()
        reps = []
        for v in self.elements():
            key = min(vec_add(v, w, self.p) for w in subgroup.elements())
            if key not in seen:
                seen.add(key)
                reps.append(key)
        return reps

    def __iter__(self):
        return self.elements()


def kernel_mod_p(matrix, p):
    """Basis of {v : matrix @ v = 0 mod p}."""
    rows = [tuple(x % p for x in row) for row in matrix]
    n_cols = len(rows[0]) if rows else 0
    reduced, pivots = rref(rows, p)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n_cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-reduced[r][fc]) % p
        basis.append(tuple(v))
    return basis


def all_subspaces(p, ambient_dim, dim):
    """Every dim-dimensional subspace of (Z_p)^ambient_dim, each exactly
    once, via canonical RREF bases.  Exponential; desk scale only."""
    if dim == 0:
        yield Subspace(p, ambient_dim, ())
        return
    for pivot_cols in itertools.combinations(range(ambient_dim), dim):
        free_positions = []
        for r in range(dim):
            for c in range(ambient_dim):
                if c > pivot_cols[r] and c not in pivot_cols:
                    free_positions.append((r, c))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = [[0] * ambient_dim for _ in range(dim)]
            for r, pc in enumerate(pivot_cols):
                rows[r][pc] = 1
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = v
            yield Subspace(p, ambient_dim, tuple(tuple(r) for r in rows))


def all_subspaces_of(space: Subspace, dim):
    """Subspaces of a given subspace, realized in the ambient coordinates."""
    if dim > space.dim:
        return
    for inner in all_subspaces(space.p, space.dim, dim):
        vectors = []
        for row in inner.basis:
            v = vec_zero(space.ambient_dim)
            for c, b in zip(row, space.basis):
                if c:
                    v = vec_add(v, vec_scale(c, b, space.p), space.p)
            vectors.append(v)
        yield Subspace.spanned_by(vectors, space.p, space.ambient_dim)


def span_dim(vectors, p):
    if not vectors:
        return 0
    rows, _ = rref(vectors, p)
    return len(rows)


def solve_mod_p(matrix, rhs, p):
    """One solution of matrix @ x = rhs mod p, or None."""
    rows = [list(r) + [b % p] for r, b in zip(matrix, rhs)]
    n_cols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(rows, p)
    x = [0] * n_cols
    for r, pc in enumerate(pivots):
        if pc == n_cols:
            return None  # inconsistent
        x[pc] = reduced[r][n_cols]
    return tuple(x)


def validate_prime(p):
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise DomainError(f"{p} is not prime")
