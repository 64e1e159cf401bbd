"""Exact arithmetic in the number fields the signature computations need.

Three flavors appear:

* cyclotomic fields Q(zeta_m), as residue polynomials mod the m-th
  cyclotomic polynomial, with certified sign determination of real elements
  by interval evaluation at doubling precision;
* real fields Q(c) with c = 2 cos(theta) a root of an integer polynomial,
  with signs decided by pure rational interval arithmetic against an
  isolating interval;
* Gaussian rationals Q(i), used for sampling signatures at exact rational
  points of the unit circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from .errors import DomainError

# ---------------------------------------------------------------------------
# polynomial helpers on dense Fraction coefficient lists (index = exponent)


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _poly_trim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ])


def _poly_neg(a):
    return [-x for x in a]


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = _poly_trim(list(a))
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / Fraction(b[-1])
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coeff = a[-1] * inv_lead
        q[shift] = coeff
        for i, y in enumerate(b):
            a[shift + i] -= coeff * y
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def _poly_eval_interval(coeffs, lo, hi):
    """Exact enclosure of a polynomial on [lo, hi] by interval Horner."""
    vlo = vhi = Fraction(0)
    for c in reversed(coeffs):
        products = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(products) + c, max(products) + c
    return vlo, vhi


def _poly_eval(coeffs, x):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


# ---------------------------------------------------------------------------
# generic residue field Q[x]/(minimal polynomial)


class NumberField:
    """Q[x]/(f) for a monic-normalizable irreducible f with Fraction
    coefficients.  Elements are NFElement residues of degree < deg f."""

    def __init__(self, min_poly):
        coeffs = [Fraction(c) for c in min_poly]
        coeffs = _poly_trim(list(coeffs))
        if len(coeffs) < 2:
            raise DomainError("minimal polynomial must have degree >= 1")
        lead = coeffs[-1]
        self.min_poly = [c / lead for c in coeffs]
        self.degree = len(self.min_poly) - 1

    def element(self, coeffs):
        dense = [Fraction(c) for c in coeffs]
        _, rem = _poly_divmod(dense, self.min_poly)
        rem = rem + [Fraction(0)] * (self.degree - len(rem))
        return NFElement(self, tuple(rem))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def generator(self):
        return self.element([0, 1])

    def from_rational(self, value):
        return self.element([Fraction(value)])

    def __repr__(self):
        return f"NumberField(degree={self.degree})"


@dataclass(frozen=True)
class NFElement:
    field: NumberField
    coeffs: tuple  # length = field.degree, Fractions

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        if not isinstance(other, NFElement) or other.field is not self.field:
            raise TypeError("mixed field arithmetic")
        return other

    def __add__(self, other):
        other = self._check(other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverting zero field element")
        # extended Euclid against the minimal polynomial
        r0, r1 = self.field.min_poly, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_add(s0, _poly_neg(_poly_mul(q, s1)))
        # r0 is now a nonzero constant gcd
        scale = 1 / r0[0]
        return self.field.element([c * scale for c in s0])

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n):
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, NFElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def rational_value(self):
        if any(self.coeffs[1:]):
            raise DomainError("element is not rational")
        return self.coeffs[0]


# ---------------------------------------------------------------------------
# real algebraic numbers: primitive integer minimal polynomial + isolating
# interval with rational endpoints


@dataclass
class RealAlgebraic:
    """A real root of an integer polynomial, isolated by an interval.

    The interval is half-open bookkeeping-free: the root lies strictly
    inside unless lo == hi, which marks an exact rational root.
    """

    min_poly: tuple  # integer coefficients, exponent 0 upward
    lo: Fraction
    hi: Fraction

    def is_exact(self):
        return self.lo == self.hi

    def refine(self):
        """Halve the isolating interval (no-op for exact roots)."""
        if self.is_exact():
            return
        mid = (self.lo + self.hi) / 2
        fm = _poly_eval([Fraction(c) for c in self.min_poly], mid)
        if fm == 0:
            self.lo = self.hi = mid
            return
        flo = _poly_eval([Fraction(c) for c in self.min_poly], self.lo)
        if (flo > 0) != (fm > 0):
            self.hi = mid
        else:
            self.lo = mid

    def refine_below_width(self, width):
        while not self.is_exact() and self.hi - self.lo >= width:
            self.refine()

    def sign_of_poly(self, coeffs):
        """Sign of q(root) for q with Fraction coefficients, q(root) != 0
        guaranteed by the caller (q nonzero mod the minimal polynomial)."""
        coeffs = [Fraction(c) for c in coeffs]
        if self.is_exact():
            value = _poly_eval(coeffs, self.lo)
            return (value > 0) - (value < 0)
        while True:
            vlo, vhi = _poly_eval_interval(coeffs, self.lo, self.hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.refine()

    def __float__(self):
        self.refine_below_width(Fraction(1, 10**12))
        return float((self.lo + self.hi) / 2)


class RealNumberField(NumberField):
    """A number field together with a chosen real embedding."""

    def __init__(self, min_poly_int, root: RealAlgebraic):
        super().__init__(min_poly_int)
        self.root = root

    def sign(self, element: NFElement) -> int:
        if not element:
            return 0
        return self.root.sign_of_poly(list(element.coeffs))


# ---------------------------------------------------------------------------
# cyclotomic fields


_T = sympy.Symbol("t")


def cyclotomic_int_coeffs(m):
    poly = sympy.cyclotomic_poly(m, _T)
    return [int(c) for c in reversed(sympy.Poly(poly, _T).all_coeffs())]


class CyclotomicField(NumberField):
    """Q(zeta_m) with zeta embedded as exp(2 pi i / m)."""

    def __init__(self, m):
        if m < 1:
            raise DomainError("order must be positive")
        self.order = m
        super().__init__(cyclotomic_int_coeffs(m))

    def zeta(self, power=1):
        return self.element([0] * (power % self.order) + [1])

    def conj(self, element: NFElement) -> NFElement:
        """Complex conjugation: zeta -> zeta^(m-1)."""
        total = self.zero()
        for k, c in enumerate(element.coeffs):
            if c:
                total = total + c * self.zeta((self.order - k) % self.order)
        return total

    def is_real(self, element: NFElement) -> bool:
        return self.conj(element) == element

    def real_sign(self, element: NFElement) -> int:
        """Certified sign of a conjugation-fixed element, by interval
        arithmetic at doubling precision.  Terminates because a nonzero
        residue is a nonzero algebraic number."""
        if not element:
            return 0
        if not self.is_real(element):
            raise DomainError("sign requested for a non-real element")
        iv = mpmath.iv
        prec = 64
        while prec <= 1 << 16:
            old = iv.prec
            iv.prec = prec
            try:
                total = iv.mpf(0)
                two_pi = 2 * iv.pi
                for k, c in enumerate(element.coeffs):
                    if c:
                        angle = two_pi * k / self.order
                        total += (iv.mpf(c.numerator) / c.denominator) * iv.cos(angle)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            finally:
                iv.prec = old
            prec *= 2
        raise DomainError("sign determination failed to converge")


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True)
class GaussRat:
    """Element of Q(i) with exact Fraction parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0):
        return GaussRat(Fraction(re), Fraction(im))

    def conj(self):
        return GaussRat(self.re, -self.im)

    def __add__(self, other):
        other = _gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_gauss(other))

    def __rsub__(self, other):
        return _gauss(other) + (-self)

    def __mul__(self, other):
        other = _gauss(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _gauss(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError
        return self * GaussRat(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return _gauss(other) / self

    def __eq__(self, other):
        try:
            other = _gauss(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def real_sign(self):
        if self.im != 0:
            raise DomainError("sign requested for a non-real element")
        return (self.re > 0) - (self.re < 0)


def _gauss(value):
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRat(Fraction(value), Fraction(0))
    raise TypeError(f"cannot coerce {value!r} to GaussRat")


def unit_circle_point(s: Fraction) -> GaussRat:
    """The rational point on the unit circle with tan(theta/2) = s:
    ((1-s^2) + 2 s i) / (1 + s^2).  s in (0, inf) sweeps theta in (0, pi)."""
    s = Fraction(s)
    denom = 1 + s * s
    return GaussRat((1 - s * s) / denom, 2 * s / denom)
