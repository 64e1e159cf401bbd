"""Seifert-matrix algebra.

A Seifert matrix is an integer matrix V with det(V - V^t) = +-1.  From it
this module computes, all exactly:

* the Alexander polynomial det(V - tV^t), normalized;
* the classical signature of V + V^t;
* Tristram-Levine signatures at rational fractions of a full turn, in
  cyclotomic arithmetic with certified pivot signs;
* the full piecewise-constant signature function on (0, pi), with jump
  locations as exact algebraic numbers z = 2 cos(theta);
* Milnor signatures of the primary summands of the isometric structure
  (V + V^t, -V^(-1) V^t), computed in the real field Q(2 cos theta);
* the homology of the double branched cover as a Smith normal form.

Sign convention: the right-handed trefoil [[-1,1],[0,-1]] has classical
signature -2, and the pinned relation between the two signature flavors is
sigma_theta = (value right of theta) - (value left of theta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DomainError, OnJumpError
from .exactlinalg import (
    det_int,
    hermitian_signature,
    identity,
    integer_kernel_basis,
    kernel_basis,
    mat_eq,
    mat_mul,
    rational_inverse,
    smith_normal_form,
    symmetric_signature,
    to_fractions,
    transpose,
)
from .laurent import (
    LaurentPolynomial,
    NormalizedAlexander,
    canonical_factor,
    factor as factor_poly,
    is_symmetric,
    normalize,
)
from .numberfield import (
    CyclotomicField,
    GaussRat,
    RealAlgebraic,
    RealNumberField,
    unit_circle_point,
)

_Z = sympy.Symbol("z")


@dataclass(frozen=True)
class SeifertMatrix:
    """An integer matrix V with det(V - V^t) = +-1."""

    entries: tuple

    @property
    def size(self):
        return len(self.entries)

    @property
    def genus_bound(self):
        return self.size // 2

    def rows(self):
        return [list(r) for r in self.entries]

    def transpose_rows(self):
        return [[self.entries[j][i] for j in range(self.size)]
                for i in range(self.size)]

    def block_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        n, m = self.size, other.size
        rows = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = self.entries[i][j]
        for i in range(m):
            for j in range(m):
                rows[n + i][n + j] = other.entries[i][j]
        return validate(rows)

    def mirror(self) -> "SeifertMatrix":
        """Seifert matrix of the mirror image: -V^t."""
        return validate([[-x for x in row] for row in self.transpose_rows()])

    def text_form(self):
        return ";".join(",".join(str(x) for x in row) for row in self.entries)

    @staticmethod
    def parse(text) -> "SeifertMatrix":
        try:
            rows = [[int(x) for x in row.split(",")] for row in text.split(";")]
        except ValueError as exc:
            raise DomainError(f"unparseable matrix text {text!r}") from exc
        return validate(rows)

    def __str__(self):
        return self.text_form()


def validate(rows) -> SeifertMatrix:
    """Check det(V - V^t) = +-1 and wrap the matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("Seifert matrix must be square")
    skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
    if det_int(skew) not in (1, -1):
        raise DomainError("not a Seifert form: det(V - V^t) != +-1")
    return SeifertMatrix(tuple(tuple(int(x) for x in r) for r in rows))


# ---------------------------------------------------------------------------
# Alexander polynomial


def alexander_polynomial(v: SeifertMatrix) -> NormalizedAlexander:
    """det(V - tV^t), normalized.  Computed by exact interpolation at the
    integers 0..n, which stays in Z throughout."""
    n = v.size
    if n == 0:
        return normalize(LaurentPolynomial.one())
    vt = v.transpose_rows()
    values = []
    for k in range(n + 1):
        m = [[v.entries[i][j] - k * vt[i][j] for j in range(n)] for i in range(n)]
        values.append(det_int(m))
    coeffs = _interpolate(values)
    poly = LaurentPolynomial({e: c for e, c in enumerate(coeffs)})
    result = normalize(poly)
    assert abs(result.evaluate(1)) == 1, "Alexander polynomial must have |p(1)| = 1"
    return result


def _interpolate(values):
    """Integer coefficients (exponent 0 upward) of the unique polynomial of
    degree < len(values) with p(k) = values[k] for k = 0, 1, ..."""
    n = len(values)
    total = [Fraction(0)] * n
    for k, yk in enumerate(values):
        if yk == 0:
            continue
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == k:
                continue
            # basis *= (x - j)
            new = [Fraction(0)] * (len(basis) + 1)
            for i, c in enumerate(basis):
                new[i + 1] += c
                new[i] -= j * c
            basis = new
            denom *= k - j
        scale = Fraction(yk, denom)
        for i, c in enumerate(basis):
            total[i] += scale * c
    out = []
    for c in total:
        assert c.denominator == 1
        out.append(int(c))
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# signatures


def classical_signature(v: SeifertMatrix) -> int:
    """Signature of the symmetric matrix V + V^t, exactly."""
    plus, minus, _ = symmetric_signature(_symmetrized(v))
    return plus - minus


def _symmetrized(v: SeifertMatrix):
    n = v.size
    return [[v.entries[i][j] + v.entries[j][i] for j in range(n)] for i in range(n)]


def tristram_levine_signature(v: SeifertMatrix, angle) -> int:
    """Signature of (1 - w)V + (1 - conj(w))V^t at w = exp(2 pi i angle),
    for a rational ``angle`` in (0, 1) written as a fraction of a full turn.

    Raises OnJumpError, carrying both one-sided values, if w is a root of
    the Alexander polynomial.
    """
    angle = Fraction(angle)
    if not 0 < angle < 1:
        raise DomainError("angle must lie strictly between 0 and 1")
    field = CyclotomicField(angle.denominator)
    omega = field.zeta(angle.numerator)
    delta = alexander_polynomial(v)
    if not delta.poly.evaluate(omega):
        left, right = _one_sided_values(v, angle)
        raise OnJumpError(
            f"exp(2 pi i {angle}) is a root of the Alexander polynomial; "
            f"one-sided signatures are {left} and {right}",
            left, right,
        )
    h = _tl_matrix(v, omega, field.conj)
    plus, minus, zero = hermitian_signature(h, conj=field.conj,
                                            sign_of=field.real_sign)
    assert zero == 0
    return plus - minus


def _tl_matrix(v: SeifertMatrix, omega, conj):
    n = v.size
    one_minus = 1 - omega
    one_minus_bar = conj(one_minus)
    return [
        [one_minus * v.entries[i][j] + one_minus_bar * v.entries[j][i]
         for j in range(n)]
        for i in range(n)
    ]


def _one_sided_values(v: SeifertMatrix, angle: Fraction):
    """Arc values immediately left and right of a jump at ``angle`` turns."""
    sf = signature_function(v)
    theta = angle if angle <= Fraction(1, 2) else 1 - angle
    field = CyclotomicField(theta.denominator)
    z_value = field.zeta(theta.numerator) + field.zeta(-theta.numerator % theta.denominator)
    for k, jump in enumerate(sf.jumps):
        g = [Fraction(c) for c in jump.location.min_poly]
        at_root = sum(c * z_value**e for e, c in enumerate(g))
        if at_root:
            continue
        if jump.location.is_exact():
            if z_value == jump.location.lo:
                return sf.arc_values[k], sf.arc_values[k + 1]
            continue
        lo_sign = field.real_sign(z_value - Fraction(jump.location.lo))
        hi_sign = field.real_sign(Fraction(jump.location.hi) - z_value)
        if lo_sign > 0 and hi_sign > 0:
            return sf.arc_values[k], sf.arc_values[k + 1]
    raise DomainError("angle is not actually at a jump")  # pragma: no cover


def tl_signature_at_circle_point(v: SeifertMatrix, s: Fraction) -> int:
    """Tristram-Levine signature at the exact rational circle point with
    tan(theta/2) = s, via Gaussian-rational arithmetic."""
    omega = unit_circle_point(s)
    conj = lambda x: x.conj()  # noqa: E731
    h = _tl_matrix(v, omega, conj)
    plus, minus, zero = hermitian_signature(
        h, conj=conj, sign_of=lambda x: x.real_sign())
    if zero:
        raise OnJumpError("circle point lies on a jump", None, None)
    return plus - minus


# ---------------------------------------------------------------------------
# the signature function and its jumps


@dataclass(frozen=True)
class SignatureJump:
    """A jump of the signature function at angle theta, recorded through the
    exact algebraic number z = 2 cos(theta)."""

    factor: LaurentPolynomial
    location: RealAlgebraic
    multiplicity: int


@dataclass(frozen=True)
class SignatureFunction:
    """Piecewise-constant Tristram-Levine signature on theta in (0, pi).

    ``arc_values[k]`` is the constant value on the open arc between jump
    k-1 and jump k (so arc_values has one more entry than jumps, and
    arc_values[0] is the value on the arc starting at theta = 0+).
    """

    jumps: tuple
    arc_values: tuple

    def jump_sizes(self):
        return tuple(self.arc_values[k + 1] - self.arc_values[k]
                     for k in range(len(self.jumps)))

    def is_constant_zero(self):
        return all(value == 0 for value in self.arc_values)


def compact_form(p: LaurentPolynomial):
    """For palindromic p of even degree 2d, the integer polynomial g of
    degree d with p(t) = t^d g(t + 1/t).  Returned as a coefficient tuple,
    exponent 0 upward."""
    dense = p.coeff_list()
    span = len(dense) - 1
    if span % 2 != 0 or dense != dense[::-1]:
        raise DomainError("compact form requires a palindromic polynomial "
                          "of even degree")
    d = span // 2
    # center the polynomial: exponents -d..d
    sym = {e - d: c for e, c in enumerate(dense) if c != 0}
    g = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = sym.get(k, 0)
        g[k] = c
        if c:
            # subtract c * (t + 1/t)^k
            for i in range(k + 1):
                e = k - 2 * i
                coeff = c * math.comb(k, i)
                sym[e] = sym.get(e, 0) - coeff
                if sym[e] == 0:
                    del sym[e]
    assert not sym, "compact form extraction failed"
    return tuple(g)


def _unit_circle_roots(g):
    """Isolated real roots of g (integer coefficients, exponent 0 upward)
    strictly inside (-2, 2), as RealAlgebraic values."""
    poly = sympy.Poly(list(reversed(list(g))), _Z)
    roots = []
    for (lo, hi), mult in poly.intervals(inf=-2, sup=2):
        assert mult == 1, "irreducible factors are squarefree"
        root = RealAlgebraic(tuple(g), Fraction(int(lo.p), int(lo.q)),
                             Fraction(int(hi.p), int(hi.q)))
        if not root.is_exact():
            # keep strictly inside (-2, 2); roots at +-2 cannot occur for
            # factors of an Alexander polynomial
            while root.lo <= -2 or root.hi >= 2:
                root.refine()
        roots.append(root)
    return roots


def symmetric_factor_roots(delta: NormalizedAlexander):
    """(factor, multiplicity, [unit-circle root angles as z = 2cos theta])
    for each distinct symmetric irreducible factor of delta."""
    out = []
    for fac, mult in factor_poly(delta).factors:
        if fac.max_exp == 0 or not is_symmetric(fac):
            continue
        roots = _unit_circle_roots(compact_form(fac))
        out.append((fac, mult, roots))
    return out


def signature_function(v: SeifertMatrix) -> SignatureFunction:
    """The complete jump structure of the Tristram-Levine signature."""
    delta = alexander_polynomial(v)
    jumps = []
    for fac, mult, roots in symmetric_factor_roots(delta):
        for root in roots:
            jumps.append(SignatureJump(fac, root, mult))
    _refine_disjoint([j.location for j in jumps])
    jumps.sort(key=lambda j: j.location.hi, reverse=True)  # descending z
    arc_values = []
    gaps = _arc_gaps([j.location for j in jumps])
    for glo, ghi in gaps:
        s = _rational_angle_parameter(glo, ghi)
        arc_values.append(tl_signature_at_circle_point(v, s))
    return SignatureFunction(tuple(jumps), tuple(arc_values))


def _refine_disjoint(locations):
    """Refine isolating intervals until pairwise disjoint."""
    changed = True
    while changed:
        changed = False
        for i in range(len(locations)):
            for j in range(i + 1, len(locations)):
                a, b = locations[i], locations[j]
                if a.hi <= b.lo or b.hi <= a.lo:
                    continue
                if a.is_exact() and b.is_exact():
                    raise DomainError("duplicate jump locations")
                a.refine()
                b.refine()
                changed = True


def _arc_gaps(sorted_locations):
    """Open rational z-intervals, one per arc, between consecutive jumps
    (locations sorted by descending z).  Gaps for k jumps: k+1 intervals
    inside (-2, 2)."""
    gaps = []
    upper = Fraction(2)
    for loc in sorted_locations:
        gaps.append((loc.hi, upper))
        upper = loc.lo
    gaps.append((Fraction(-2), upper))
    return gaps


def _rational_angle_parameter(z_lo, z_hi):
    """A rational s with 2(1-s^2)/(1+s^2) inside the open interval
    (z_lo, z_hi); found by exact bisection of the monotone map.

    The map decreases strictly from 2 at s = 0 toward -2 as s grows, so a
    bracket always exists for any nonempty open subinterval of (-2, 2].
    """

    def value(s):
        return 2 * (1 - s * s) / (1 + s * s)

    lo, hi = Fraction(0), Fraction(1)
    while value(hi) >= z_hi:
        hi *= 2
    if value(hi) > z_lo:
        return hi
    # invariant: value(lo) >= z_hi > z_lo >= value(hi)
    while True:
        mid = (lo + hi) / 2
        val = value(mid)
        if z_lo < val < z_hi:
            return mid
        if val >= z_hi:
            lo = mid
        else:
            hi = mid


# ---------------------------------------------------------------------------
# isometric structures and Milnor signatures


@dataclass(frozen=True)
class IsometricStructure:
    """The pair (V + V^t, V^(-1) V^t) over Q, for nonsingular V.

    The transformation's sign is chosen so that its characteristic
    polynomial is the Alexander polynomial; negating it composes with the
    isometry -I and relabels the primary summands by theta -> pi - theta.
    """

    inner_product: tuple  # rational symmetric matrix
    transformation: tuple  # rational matrix preserving it

    def matrices(self):
        return ([list(r) for r in self.inner_product],
                [list(r) for r in self.transformation])


def witt_reduce(v: SeifertMatrix) -> SeifertMatrix:
    """Split off 2-dimensional blocks until V is nonsingular over Q.

    When V is singular, a primitive x with Vx = 0 is completed by an
    S-dual y (S = V - V^t) to a symplectic pair whose S-complement carries
    a smaller Seifert form in the same Witt class, with the same Alexander
    polynomial up to units.
    """
    rows = v.rows()
    while rows and det_int(rows) == 0:
        n = len(rows)
        x = _primitive(integer_kernel_basis(rows)[0])
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        u = [sum(skew[i][k] * x[i] for i in range(n)) for k in range(n)]  # S^t x
        y = _bezout_vector(u)
        w = [sum(skew[i][k] * y[i] for i in range(n)) for k in range(n)]  # S^t y
        complement = integer_kernel_basis([u, w])
        assert len(complement) == n - 2
        rows = [[_bilinear(rows, a, b) for b in complement] for a in complement]
    return validate(rows)


def _bilinear(matrix, a, b):
    return sum(a[i] * matrix[i][j] * b[j]
               for i in range(len(a)) for j in range(len(b)))


def _primitive(vector):
    g = 0
    for x in vector:
        g = math.gcd(g, abs(x))
    return [x // g for x in vector]


def _bezout_vector(u):
    """An integer vector y with sum(u[i] * y[i]) = 1, for primitive u."""
    n = len(u)
    y = [0] * n
    g = 0
    for i in range(n):
        if u[i] == 0:
            continue
        if g == 0:
            g = abs(u[i])
            y = [0] * n
            y[i] = 1 if u[i] > 0 else -1
            continue
        gg, a, b = _ext_gcd(g, u[i])
        y = [a * c for c in y]
        y[i] += b
        g = gg
        if g == 1:
            break
    assert g == 1, "vector is not primitive"
    return y


def _ext_gcd(a, b):
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


def isometric_structure(v: SeifertMatrix) -> IsometricStructure:
    """(V + V^t, V^(-1)V^t) after Witt reduction of singular V."""
    reduced = witt_reduce(v)
    b = to_fractions(_symmetrized(reduced))
    vt = to_fractions(reduced.transpose_rows())
    v_inv = rational_inverse(reduced.rows())
    t = mat_mul(v_inv, vt)
    check = mat_mul(transpose(t), mat_mul(b, t))
    assert mat_eq(check, b), "transformation fails to preserve the form"
    return IsometricStructure(
        tuple(tuple(x for x in row) for row in b),
        tuple(tuple(x for x in row) for row in t),
    )


def milnor_theta_signature(v: SeifertMatrix, fac: LaurentPolynomial,
                           root: RealAlgebraic) -> int:
    """Signature of the inner product restricted to the primary summand of
    the isometric structure at t^2 - 2cos(theta) t + 1, computed in the
    real field Q(2 cos theta).

    ``root`` carries 2 cos(theta) as the compact form of ``fac`` plus an
    isolating interval (the representation signature_function produces).
    """
    fac = canonical_factor(fac)
    if not is_symmetric(fac):
        raise DomainError("factor is not symmetric")
    reduced = witt_reduce(v)
    delta = alexander_polynomial(reduced)
    mult = factor_poly(delta).multiplicity(fac)
    if mult == 0:
        raise DomainError("factor does not divide the Alexander polynomial")
    g = compact_form(fac)
    if tuple(root.min_poly) != tuple(g):
        raise DomainError("root does not belong to the given factor")
    field = RealNumberField(list(g), root)
    z = field.generator()
    structure = isometric_structure(reduced)
    b, t = structure.matrices()
    n = len(t)
    tf = [[field.from_rational(x) for x in row] for row in t]
    # p_theta(T) = T^2 - z T + 1
    p = mat_mul(tf, tf)
    for i in range(n):
        for j in range(n):
            p[i][j] = p[i][j] - z * tf[i][j]
        p[i][i] = p[i][i] + field.one()
    power = identity(n, field.one(), field.zero())
    for _ in range(mult):
        power = mat_mul(power, p)
    summand = kernel_basis(power, zero=field.zero(), one=field.one())
    assert len(summand) == 2 * mult, "primary summand has unexpected dimension"
    bf = [[field.from_rational(x) for x in row] for row in b]
    restricted = [
        [_field_bilinear(bf, a, c, field) for c in summand] for a in summand
    ]
    plus, minus, zero = hermitian_signature(
        restricted, conj=lambda x: x, sign_of=field.sign)
    assert zero == 0, "restricted form must be nondegenerate"
    return plus - minus


def _field_bilinear(matrix, a, b, field):
    total = field.zero()
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    total = total + ai * matrix[i][j] * bj
    return total


def milnor_signatures(v: SeifertMatrix):
    """All (factor, root, signature) triples over the symmetric irreducible
    factors of the Alexander polynomial and their unit-circle roots."""
    reduced = witt_reduce(v)
    delta = alexander_polynomial(reduced)
    out = []
    for fac, _mult, roots in symmetric_factor_roots(delta):
        for root in roots:
            out.append((fac, root, milnor_theta_signature(reduced, fac, root)))
    return out


# ---------------------------------------------------------------------------
# double branched cover homology


@dataclass(frozen=True)
class HomologyPresentation:
    """H_1 of the double branched cover: invariant factors of V + V^t."""

    invariant_factors: tuple  # nontrivial factors, each dividing the next
    order: int

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z{d}" for d in self.invariant_factors)


def branched_cover_homology(v: SeifertMatrix) -> HomologyPresentation:
    """Smith normal form of V + V^t.  The order always equals
    |Alexander polynomial at -1| and in particular is odd and nonzero."""
    sym = _symmetrized(v)
    if v.size and det_int(sym) == 0:
        raise DomainError("V + V^t is singular: homology would be infinite")
    d, _, _ = smith_normal_form(sym)
    nontrivial = tuple(x for x in d if x != 1)
    order = 1
    for x in d:
        order *= x
    return HomologyPresentation(nontrivial, abs(order))
