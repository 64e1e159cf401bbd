import math
from fractions import Fraction

import pytest

from knotgenus.errors import DomainError
from knotgenus.numberfield import (
    CyclotomicField,
    GaussRat,
    NumberField,
    RealAlgebraic,
    RealNumberField,
    unit_circle_point,
)


class TestNumberField:
    def test_sqrt2_arithmetic(self):
        f = NumberField([-2, 0, 1])  # x^2 - 2
        r = f.generator()
        assert r * r == f.from_rational(2)
        assert (1 + r) * (1 - r) == f.from_rational(-1)

    def test_inverse(self):
        f = NumberField([-2, 0, 1])
        r = f.generator()
        x = 3 + 2 * r
        assert x * x.inverse() == f.one()
        assert (f.one() / x) * x == f.one()

    def test_zero_division(self):
        f = NumberField([-2, 0, 1])
        with pytest.raises(ZeroDivisionError):
            f.zero().inverse()

    def test_pow(self):
        f = NumberField([-2, 0, 1])
        r = f.generator()
        assert r**4 == f.from_rational(4)


class TestRealAlgebraic:
    def test_sqrt2_sign(self):
        root = RealAlgebraic((-2, 0, 1), Fraction(1), Fraction(2))
        # sign of root - 3/2 is negative: sqrt(2) < 1.5? no, sqrt2 = 1.414 < 1.5
        assert root.sign_of_poly([Fraction(-3, 2), Fraction(1)]) == -1
        assert root.sign_of_poly([Fraction(-7, 5), Fraction(1)]) == 1
        assert abs(float(root) - math.sqrt(2)) < 1e-9

    def test_exact_root(self):
        root = RealAlgebraic((-1, 1), Fraction(1), Fraction(1))
        assert root.sign_of_poly([Fraction(-2), Fraction(1)]) == -1
        assert root.sign_of_poly([Fraction(0), Fraction(5)]) == 1

    def test_embedded_field_sign(self):
        root = RealAlgebraic((-2, 0, 1), Fraction(-2), Fraction(-1))  # -sqrt2
        field = RealNumberField([-2, 0, 1], root)
        r = field.generator()
        assert field.sign(r) == -1
        assert field.sign(r * r) == 1
        assert field.sign(field.zero()) == 0


class TestCyclotomic:
    def test_zeta_power_identity(self):
        for m in (3, 4, 5, 6, 12):
            f = CyclotomicField(m)
            z = f.zeta()
            assert z**m == f.one()

    def test_conjugation(self):
        f = CyclotomicField(5)
        z = f.zeta()
        assert f.conj(z) == z**4
        assert f.conj(f.conj(z + 3 * z**2)) == z + 3 * z**2

    def test_real_parts(self):
        f = CyclotomicField(5)
        z = f.zeta()
        r = z + f.conj(z)  # 2 cos(2 pi / 5) > 0
        assert f.is_real(r)
        assert f.real_sign(r) == 1
        s = z**2 + f.conj(z**2)  # 2 cos(4 pi / 5) < 0
        assert f.real_sign(s) == -1

    def test_sign_matches_float(self):
        for m in (7, 9, 11):
            f = CyclotomicField(m)
            z = f.zeta()
            for k in range(1, m):
                elem = z**k + f.conj(z**k)
                expected = 2 * math.cos(2 * math.pi * k / m)
                assert f.real_sign(elem) == (expected > 0) - (expected < 0)

    def test_nonreal_rejected(self):
        f = CyclotomicField(3)
        with pytest.raises(DomainError):
            f.real_sign(f.zeta())


class TestGaussRat:
    def test_arithmetic(self):
        i = GaussRat.of(0, 1)
        assert i * i == GaussRat.of(-1)
        x = GaussRat.of(Fraction(3, 5), Fraction(4, 5))
        assert x * x.conj() == GaussRat.of(1)
        assert (x / x) == GaussRat.of(1)

    def test_unit_circle_point(self):
        for s in (Fraction(1, 3), Fraction(2), Fraction(7, 2)):
            w = unit_circle_point(s)
            assert w * w.conj() == GaussRat.of(1)
        # s = 1 is the angle pi/2
        assert unit_circle_point(Fraction(1)) == GaussRat.of(0, 1)

    def test_real_sign(self):
        assert GaussRat.of(Fraction(-2, 7)).real_sign() == -1
        with pytest.raises(DomainError):
            GaussRat.of(1, 1).real_sign()
