"""Linking forms on the homology of double branched covers.

A FiniteLinkingForm is the p-primary part of the cokernel of V + V^t with
the Q/Z-valued pairing induced by the inverse matrix.  Desk scope for the
subgroup machinery (metabolizers, annihilators, characters) is homogeneous
(Z_p)^r, which covers every group appearing in the verification sweeps;
general p^k summands are representable and print correctly but are not
enumerated over.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exactlinalg import rational_inverse, smith_normal_form
from .fp import Subspace, rref, vec_add, vec_scale, vec_zero
from .seifert import SeifertMatrix

# ---------------------------------------------------------------------------
# the form


@dataclass(frozen=True)
class FiniteLinkingForm:
    """Symmetric nonsingular pairing H x H -> Q/Z on H = sum Z_{p^k_i}."""

    prime: int
    orders: tuple  # p^{k_i} per generator
    pairing: tuple  # beta(g_i, g_j) as Fractions reduced mod 1

    def __post_init__(self):
        r = len(self.orders)
        if len(self.pairing) != r or any(len(row) != r for row in self.pairing):
            raise DomainError("pairing matrix does not match the rank")
        for i in range(r):
            for j in range(r):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise DomainError("pairing is not symmetric")
                if not 0 <= self.pairing[i][j] < 1:
                    raise DomainError("pairing entries must be reduced mod 1")
        if self.is_homogeneous and r and not self._nonsingular_mod_p():
            raise DomainError("pairing is singular")

    @property
    def rank(self):
        return len(self.orders)

    @property
    def group_order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def is_homogeneous(self):
        return all(d == self.prime for d in self.orders)

    def fp_gram(self):
        """For homogeneous forms: the scaled integer Gram matrix mod p,
        entries p * beta(g_i, g_j)."""
        self._require_homogeneous()
        p = self.prime
        return [[int(self.pairing[i][j] * p) % p for j in range(self.rank)]
                for i in range(self.rank)]

    def _nonsingular_mod_p(self):
        gram = self.fp_gram()
        reduced, pivots = rref(gram, self.prime)
        return len(pivots) == self.rank

    def _require_homogeneous(self):
        if not self.is_homogeneous:
            raise DomainError("operation requires a homogeneous (Z_p)^r form")

    def beta(self, x, y) -> Fraction:
        """beta(x, y) in Q/Z for coordinate vectors x, y."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * self.pairing[i][j]
        return total % 1

    def negate(self) -> "FiniteLinkingForm":
        return FiniteLinkingForm(
            self.prime, self.orders,
            tuple(tuple((-x) % 1 for x in row) for row in self.pairing))

    def direct_sum(self, other: "FiniteLinkingForm") -> "FiniteLinkingForm":
        if other.prime != self.prime:
            raise DomainError("direct sum requires a common prime")
        r, s = self.rank, other.rank
        rows = []
        for i in range(r + s):
            row = []
            for j in range(r + s):
                if i < r and j < r:
                    row.append(self.pairing[i][j])
                elif i >= r and j >= r:
                    row.append(other.pairing[i - r][j - r])
                else:
                    row.append(Fraction(0))
            rows.append(tuple(row))
        return FiniteLinkingForm(self.prime, self.orders + other.orders,
                                 tuple(rows))

    def __str__(self):
        group = " + ".join(f"Z{d}" for d in self.orders) or "0"
        return f"linking form on {group}"


def hyperbolic_form(p: int, blocks: int) -> FiniteLinkingForm:
    """The orthogonal sum of ``blocks`` hyperbolic planes over Z_p: each
    block pairs its two generators to 1/p and has zero self-pairings."""
    r = 2 * blocks
    rows = [[Fraction(0)] * r for _ in range(r)]
    for b in range(blocks):
        rows[2 * b][2 * b + 1] = Fraction(1, p)
        rows[2 * b + 1][2 * b] = Fraction(1, p)
    return FiniteLinkingForm(p, (p,) * r, tuple(tuple(r_) for r_ in rows))


def from_seifert(v: SeifertMatrix, p: int) -> FiniteLinkingForm:
    """The p-primary part of coker(V + V^t) with the pairing given by the
    inverse matrix mod 1, on the Smith-normal-form generating set.

    When the resulting homogeneous form admits a hyperbolic basis it is
    presented in exact hyperbolic normal form, fixing the sign/lift
    ambiguity deterministically.
    """
    n = v.size
    sym = [[v.entries[i][j] + v.entries[j][i] for j in range(n)] for i in range(n)]
    d, u, _w = smith_normal_form(sym)
    order = 1
    for x in d:
        order *= x
    if order == 0:
        raise DomainError("V + V^t is singular")
    if order % p != 0:
        raise DomainError(f"{p} does not divide the homology order {abs(order)}")
    a_inv = rational_inverse(sym)
    u_inv = rational_inverse(u)  # integral since u is unimodular
    generators = []
    orders = []
    for i, di in enumerate(d):
        k = 0
        while di % p == 0:
            di //= p
            k += 1
        if k == 0:
            continue
        scale = d[i] // p**k
        generators.append([scale * u_inv[r][i] for r in range(n)])
        orders.append(p**k)
    pairing = []
    for gi in generators:
        row = []
        for gj in generators:
            value = sum(gi[r] * a_inv[r][s] * gj[s]
                        for r in range(n) for s in range(n))
            row.append(value % 1)
        pairing.append(tuple(row))
    form = FiniteLinkingForm(p, tuple(orders), tuple(pairing))
    if form.is_homogeneous:
        hyperbolic = _hyperbolic_rebase(form)
        if hyperbolic is not None:
            return hyperbolic
    return form


def _hyperbolic_rebase(form: FiniteLinkingForm):
    """Rewrite a homogeneous form in exact hyperbolic normal form, or None
    if the form has no isotropic vector at some stage (anisotropic rest)."""
    p = form.prime
    r = form.rank
    if r % 2:
        return None
    gram = form.fp_gram()

    def pair(x, y):
        return sum(x[i] * gram[i][j] * y[j]
                   for i in range(r) for j in range(r)) % p

    basis = []
    complement = Subspace.spanned_by(_identity_rows(r), p, r)
    while complement.dim:
        iso = None
        for x in complement.elements():
            if any(x) and pair(x, x) == 0:
                iso = x
                break
        if iso is None:
            return None
        dual = None
        for y in complement.elements():
            if pair(iso, y) != 0:
                dual = y
                break
        assert dual is not None, "nonsingular form must pair nontrivially"
        scale = pow(pair(iso, dual), -1, p)
        dual = vec_scale(scale, dual, p)
        # make the dual vector isotropic: y' = y - (b(y,y)/2) x
        c = (pair(dual, dual) * pow(2, -1, p)) % p
        dual = vec_add(dual, vec_scale((-c) % p, iso, p), p)
        basis.extend([iso, dual])
        kept = [v for v in complement.elements()
                if pair(iso, v) == 0 and pair(dual, v) == 0]
        complement = Subspace.spanned_by(kept, p, r)
    new_pairing = []
    for x in basis:
        row = []
        for y in basis:
            row.append(form.beta(x, y))
        new_pairing.append(tuple(row))
    rebased = FiniteLinkingForm(p, form.orders, tuple(new_pairing))
    assert rebased.pairing == hyperbolic_form(p, r // 2).pairing
    return rebased


def _identity_rows(r):
    return [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)]


# ---------------------------------------------------------------------------
# metabolizers


@dataclass(frozen=True)
class Metabolizer:
    """A self-annihilating subgroup M with |M|^2 = |H|, as a canonical
    mod-p basis."""

    prime: int
    ambient_rank: int
    basis: tuple

    @property
    def subspace(self):
        return Subspace(self.prime, self.ambient_rank, self.basis)

    @property
    def order(self):
        return self.prime ** len(self.basis)

    def elements(self):
        return iter(self.element_list())

    def element_list(self):
        return _metabolizer_elements(self)

    def element_set(self):
        return _metabolizer_element_set(self)

    def contains(self, vector):
        return self.subspace.contains(vector)


@functools.lru_cache(maxsize=4096)
def _metabolizer_elements(m: Metabolizer):
    return tuple(m.subspace.elements())


@functools.lru_cache(maxsize=4096)
def _metabolizer_element_set(m: Metabolizer):
    return frozenset(_metabolizer_elements(m))


def metabolizer(form: FiniteLinkingForm, vectors) -> Metabolizer:
    """Validate and canonicalize a metabolizer presented by spanning
    vectors."""
    form._require_homogeneous()
    space = Subspace.spanned_by(list(vectors), form.prime, form.rank)
    m = Metabolizer(form.prime, form.rank, space.basis)
    if not is_metabolizer(form, m):
        raise DomainError("subgroup is not a metabolizer")
    return m


def is_metabolizer(form: FiniteLinkingForm, candidate) -> bool:
    """Whether the subgroup is exactly its own annihilator."""
    form._require_homogeneous()
    space = _as_subspace(form, candidate)
    if form.prime ** (2 * space.dim) != form.group_order:
        return False
    gram = form.fp_gram()
    p = form.prime
    for x in space.basis:
        sx = [i for i in range(form.rank) if x[i]]
        for y in space.basis:
            if sum(x[i] * gram[i][j] * y[j]
                   for i in sx for j in range(form.rank) if y[j]) % p:
                return False
    return True


def annihilator(form: FiniteLinkingForm, candidate) -> Subspace:
    """{x : beta(x, s) = 0 for all s in the subgroup}."""
    form._require_homogeneous()
    space = _as_subspace(form, candidate)
    p = form.prime
    if space.dim == 0:
        return Subspace.spanned_by(_identity_rows(form.rank), p, form.rank)
    gram = form.fp_gram()
    rows = []
    for s in space.basis:
        rows.append([sum(gram[i][j] * s[j] for j in range(form.rank)) % p
                     for i in range(form.rank)])
    from .fp import kernel_mod_p

    return Subspace.spanned_by(kernel_mod_p(rows, p), p, form.rank)


def _as_subspace(form, candidate):
    if isinstance(candidate, Metabolizer):
        return candidate.subspace
    if isinstance(candidate, Subspace):
        return candidate
    return Subspace.spanned_by(list(candidate), form.prime, form.rank)


def enumerate_metabolizers(form: FiniteLinkingForm):
    """All metabolizers of a homogeneous form, in deterministic order of
    their canonical bases.

    Depth-first search over canonical reduced-echelon bases, pruning any
    partial basis that already fails isotropy.
    """
    return list(_enumerate_metabolizers_cached(form))


@functools.lru_cache(maxsize=64)
def _enumerate_metabolizers_cached(form: FiniteLinkingForm):
    form._require_homogeneous()
    r = form.rank
    if r % 2:
        raise DomainError("group order is not a perfect square: "
                          "no metabolizer can exist")
    p = form.prime
    k = r // 2
    gram = form.fp_gram()
    results = []

    def grammed(x):
        return tuple(sum(gram[i][j] * x[j] for j in range(r) if x[j]) % p
                     for i in range(r))

    def candidate_rows(pivot_cols, row_index):
        """All RREF-compatible rows with pivot pivot_cols[row_index]."""
        pc = pivot_cols[row_index]
        free_cols = [c for c in range(pc + 1, r) if c not in pivot_cols]
        for values in itertools.product(range(p), repeat=len(free_cols)):
            row = [0] * r
            row[pc] = 1
            for c, val in zip(free_cols, values):
                row[c] = val
            yield tuple(row)

    def extend(pivot_cols, rows, gram_rows):
        idx = len(rows)
        if idx == k:
            results.append(Metabolizer(p, r, tuple(rows)))
            return
        for row in candidate_rows(pivot_cols, idx):
            support = [i for i in range(r) if row[i]]
            g = grammed(row)
            if sum(row[i] * g[i] for i in support) % p:
                continue
            if any(sum(row[i] * gp[i] for i in support) % p
                   for gp in gram_rows):
                continue
            extend(pivot_cols, rows + [row], gram_rows + [g])

    for pivot_cols in itertools.combinations(range(r), k):
        extend(pivot_cols, [], [])
    results.sort(key=lambda m: m.basis)
    return tuple(results)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    """The character x -> beta(x, m) into Z_{p^k} determined by pairing
    with a fixed element m."""

    form: FiniteLinkingForm
    element: tuple

    @property
    def modulus(self):
        return max(self.form.orders)

    def value(self, x) -> Fraction:
        return self.form.beta(x, self.element)

    def value_mod(self, x) -> int:
        v = self.value(x)
        return int(v * self.modulus) % self.modulus

    def vanishes_on(self, candidate) -> bool:
        space = _as_subspace(self.form, candidate)
        return all(self.value(b) == 0 for b in space.basis)


def character(form: FiniteLinkingForm, m) -> Character:
    return Character(form, tuple(x % o for x, o in zip(m, form.orders)))
