"""Integer Laurent polynomials: exact arithmetic, normalization, rational
factorization, and the Fox-Milnor sliceness test.

A Laurent polynomial is stored sparsely as a map from integer exponents to
nonzero integer coefficients; the zero polynomial is the empty map.  The text
form used by the CLI and the knot-table file lists coefficients from exponent
0 upward, e.g. ``"1,-3,3,-3,1"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DomainError

_T = sympy.Symbol("t")


class LaurentPolynomial:
    """An element of Z[t, t^-1].

    >>> p = LaurentPolynomial({2: 1, -1: -3})
    >>> print(p)
    -3*t^-1 + t^2
    >>> print(p * p)
    9*t^-2 - 6*t + t^4
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        items = tuple(sorted((e, c) for e, c in (coeffs or {}).items() if c != 0))
        object.__setattr__(self, "_coeffs", items)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def t_power(cls, n, coeff=1):
        return cls({n: coeff})

    @classmethod
    def from_coeffs(cls, coeffs, min_exp=0):
        """Build from a dense coefficient list starting at ``min_exp``."""
        return cls({min_exp + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text):
        """Parse the comma-separated text form (exponent 0 upward).

        >>> print(LaurentPolynomial.parse("1,-3,3,-3,1"))
        1 - 3*t + 3*t^2 - 3*t^3 + t^4
        """
        try:
            coeffs = [int(part.strip()) for part in text.split(",")]
        except ValueError as exc:
            raise DomainError(f"unparseable polynomial text {text!r}") from exc
        return cls.from_coeffs(coeffs)

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self):
        return not self._coeffs

    @property
    def min_exp(self):
        if not self._coeffs:
            raise DomainError("zero polynomial has no minimum exponent")
        return self._coeffs[0][0]

    @property
    def max_exp(self):
        if not self._coeffs:
            raise DomainError("zero polynomial has no maximum exponent")
        return self._coeffs[-1][0]

    @property
    def leading_coefficient(self):
        return self._coeffs[-1][1] if self._coeffs else 0

    def coefficient(self, exponent):
        for e, c in self._coeffs:
            if e == exponent:
                return c
        return 0

    def items(self):
        return self._coeffs

    def coeff_list(self):
        """Dense coefficient list from min_exp to max_exp (empty if zero)."""
        if not self._coeffs:
            return []
        lo, hi = self.min_exp, self.max_exp
        dense = [0] * (hi - lo + 1)
        for e, c in self._coeffs:
            dense[e - lo] = c
        return dense

    def content(self):
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for _, c in self._coeffs:
            g = _gcd(g, abs(c))
        return g

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs:
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for e1, c1 in self._coeffs:
            for e2, c2 in other._coeffs:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative powers of polynomials are not defined")
        result = LaurentPolynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def shift(self, n):
        """Multiply by t^n."""
        return LaurentPolynomial({e + n: c for e, c in self._coeffs})

    def reciprocal(self):
        """Substitute t -> t^-1."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs})

    def evaluate(self, value):
        """Evaluate at an exact scalar (Fraction or field element).

        Integers are promoted to Fraction so negative exponents stay exact.
        """
        if isinstance(value, int):
            value = Fraction(value)
        total = value - value  # zero of the right type
        for e, c in self._coeffs:
            if e >= 0:
                total = total + c * value**e
            else:
                total = total + c * (1 / value) ** (-e)
        return total

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = _coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"LaurentPolynomial({dict(self._coeffs)!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs:
            if e == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                power = "t" if e == 1 else f"t^{e}"
                term = mag + power
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)

    def text_form(self):
        """Comma-separated coefficients from exponent 0 upward.

        Only valid when min_exp >= 0; use ``normalize`` first otherwise.
        """
        if self.is_zero:
            return "0"
        if self.min_exp < 0:
            raise DomainError("text form requires nonnegative exponents")
        dense = [0] * (self.max_exp + 1)
        for e, c in self._coeffs:
            dense[e] = c
        return ",".join(str(c) for c in dense)


def _coerce(value):
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial({0: value})
    raise TypeError(f"cannot coerce {value!r} to LaurentPolynomial")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class NormalizedAlexander:
    """The canonical associate of a nonzero Laurent polynomial: minimum
    exponent 0, nonzero constant term, positive leading coefficient."""

    poly: LaurentPolynomial
    degree: int

    def __post_init__(self):
        p = self.poly
        if p.is_zero or p.min_exp != 0 or p.leading_coefficient <= 0:
            raise DomainError("not in normalized form")
        if p.max_exp != self.degree:
            raise DomainError("degree does not match the polynomial")

    def __str__(self):
        return str(self.poly)

    def evaluate(self, value):
        return self.poly.evaluate(value)

    def is_knot_polynomial(self):
        """Whether |p(1)| = 1, the defining trait of Alexander polynomials."""
        return abs(self.poly.evaluate(1)) == 1


@dataclass(frozen=True)
class IrreducibleFactorization:
    """Factorization over Q, scaled to primitive integer factors.

    ``unit`` is +-1 and ``factors`` lists (factor, multiplicity) pairs with
    each factor primitive with positive leading coefficient, ordered by
    degree then by coefficient list.  The product of unit and the factor
    powers reproduces the input.  Prime integer contents, which cannot occur
    for knot polynomials, appear as degree-0 entries.
    """

    unit: int
    factors: tuple

    def expand(self):
        out = LaurentPolynomial({0: self.unit})
        for f, mult in self.factors:
            out = out * f**mult
        return out

    def multiplicity(self, factor):
        for f, mult in self.factors:
            if f == factor:
                return mult
        return 0


def normalize(p: LaurentPolynomial) -> NormalizedAlexander:
    """Return the canonical associate of ``p`` under multiplication by +-t^n.

    >>> p = LaurentPolynomial.from_coeffs([1, -3, 3, -3, 1], min_exp=-2)
    >>> print(normalize(p).poly)
    1 - 3*t + 3*t^2 - 3*t^3 + t^4
    """
    if p.is_zero:
        raise DomainError("cannot normalize the zero polynomial")
    q = p.shift(-p.min_exp)
    if q.leading_coefficient < 0:
        q = -q
    return NormalizedAlexander(q, q.max_exp)


def canonical_factor(p: LaurentPolynomial) -> LaurentPolynomial:
    """Primitive positive-leading associate of a nonzero polynomial."""
    q = normalize(p).poly
    c = q.content()
    if c > 1:
        q = LaurentPolynomial({e: k // c for e, k in q.items()})
    return q


def _to_sympy(p: LaurentPolynomial):
    return sympy.Poly(list(reversed(p.coeff_list())), _T, domain="ZZ")


def _from_sympy(poly) -> LaurentPolynomial:
    return LaurentPolynomial.from_coeffs(list(reversed(poly.all_coeffs())))


def factor(p: NormalizedAlexander) -> IrreducibleFactorization:
    """Complete irreducible factorization over the rationals.

    Factors come back primitive over Z with positive leading coefficients,
    in deterministic order.

    >>> fz = factor(normalize(LaurentPolynomial.parse("2,-5,2")))
    >>> [(str(f), m) for f, m in fz.factors]
    [('-2 + t', 1), ('-1 + 2*t', 1)]
    """
    poly = p.poly
    if poly.max_exp == 0:
        # constant: unit times prime contents
        value = poly.coefficient(0)
        unit = 1 if value > 0 else -1
        factors = []
        for prime, mult in sympy.factorint(abs(value)).items():
            factors.append((LaurentPolynomial({0: int(prime)}), int(mult)))
        return IrreducibleFactorization(unit, tuple(factors))

    content, raw = _to_sympy(poly).factor_list()
    unit = 1 if content > 0 else -1
    factors = []
    for prime, mult in sympy.factorint(abs(int(content))).items():
        factors.append((LaurentPolynomial({0: int(prime)}), int(mult)))
    for fac, mult in raw:
        lp = _from_sympy(fac)
        if lp.leading_coefficient < 0:
            lp = -lp
            if mult % 2 == 1:
                unit = -unit
        factors.append((lp.shift(-lp.min_exp), int(mult)))
    factors.sort(key=lambda fm: (fm[0].max_exp, fm[0].coeff_list()))
    result = IrreducibleFactorization(unit, tuple(factors))
    assert result.expand() == poly, "factorization failed to reproduce input"
    return result


def is_symmetric(p: LaurentPolynomial) -> bool:
    """Whether p(t) = +-t^n p(1/t) for some n.

    >>> is_symmetric(LaurentPolynomial.parse("1,-1,1"))
    True
    >>> is_symmetric(LaurentPolynomial.parse("-2,1"))
    False
    """
    if p.is_zero:
        raise DomainError("symmetry of the zero polynomial is not defined")
    dense = p.coeff_list()
    return dense == dense[::-1] or dense == [-c for c in dense[::-1]]


def reversal(p: LaurentPolynomial) -> LaurentPolynomial:
    """Canonical form of p(1/t): the coefficient list reversed."""
    return canonical_factor(p.reciprocal())


def fox_milnor_test(p: NormalizedAlexander):
    """Search for f with p = +-t^n f(t) f(1/t); None if no witness exists.

    The search pairs each asymmetric irreducible factor with its reversal
    and requires even multiplicity of every symmetric factor.

    >>> w = fox_milnor_test(normalize(LaurentPolynomial.parse("1,-2,3,-2,1")))
    >>> print(w)
    1 - t + t^2
    >>> fox_milnor_test(normalize(LaurentPolynomial.parse("1,-3,1"))) is None
    True
    """
    if abs(p.poly.evaluate(1)) != 1:
        raise DomainError("not a knot polynomial: |p(1)| != 1")
    fz = factor(p)
    remaining = {f: m for f, m in fz.factors}
    witness = LaurentPolynomial.one()
    for f in sorted(remaining, key=lambda q: (q.max_exp, q.coeff_list())):
        m = remaining[f]
        if m == 0:
            continue
        if is_symmetric(f):
            if m % 2 != 0:
                return None
            witness = witness * f ** (m // 2)
            remaining[f] = 0
        else:
            partner = reversal(f)
            if remaining.get(partner, 0) != m:
                return None
            witness = witness * f**m
            remaining[f] = 0
            remaining[partner] = 0
    # the pairing conditions are also sufficient: check defensively
    assert _is_fox_milnor_product(p.poly, witness)
    return witness


def _is_fox_milnor_product(p: LaurentPolynomial, f: LaurentPolynomial) -> bool:
    """Whether p = +-t^n f(t) f(1/t)."""
    prod = f * f.reciprocal()
    q = normalize(prod).poly
    target = normalize(p).poly
    return q == target or q == -target


def fox_milnor_witness_bruteforce(p: NormalizedAlexander):
    """Oracle: exhaust all sub-multisets of the factorization as candidate
    witnesses.  Exponentially slower than fox_milnor_test but independent of
    its pairing logic; intended for small-degree cross-checks."""
    if abs(p.poly.evaluate(1)) != 1:
        raise DomainError("not a knot polynomial: |p(1)| != 1")
    fz = factor(p)
    choices = [range(m + 1) for _, m in fz.factors]
    for exponents in itertools.product(*choices):
        candidate = LaurentPolynomial.one()
        for (f, _), e in zip(fz.factors, exponents):
            candidate = candidate * f**e
        if _is_fox_milnor_product(p.poly, candidate):
            return candidate
    return None


def cyclotomic_phi_2p(p: int) -> NormalizedAlexander:
    """The cyclotomic polynomial of order 2p for an odd prime p:
    t^(p-1) - t^(p-2) + ... - t + 1.

    >>> print(cyclotomic_phi_2p(5))
    1 - t + t^2 - t^3 + t^4
    """
    if p % 2 == 0 or p < 3 or not sympy.isprime(p):
        raise DomainError(f"{p} is not an odd prime")
    poly = LaurentPolynomial({p - 1 - k: 1 if k % 2 == 0 else -1 for k in range(p)})
    return NormalizedAlexander(poly, p - 1)
