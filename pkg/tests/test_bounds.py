import random

import pytest

from knotgenus.errors import DataIntegrityError, DomainError
from knotgenus.bounds import (
    GenusBounds,
    combine_bounds,
    g4_signature_bound,
    gc_milnor_bound,
    gc_polynomial_bound,
)
from knotgenus.laurent import LaurentPolynomial, cyclotomic_phi_2p, normalize
from knotgenus.seifert import validate

P = LaurentPolynomial.parse

TREFOIL = validate([[-1, 1], [0, -1]])
GRANNY = TREFOIL.block_sum(TREFOIL)
SQUARE = TREFOIL.block_sum(TREFOIL.mirror())
SLICE_BLOCK = validate([[0, 1], [2, 0]])
# genus-2 Seifert matrix of the (2,5) torus knot; Alexander = phi_10
TORUS_2_5 = validate([
    [-1, 1, 0, 0],
    [0, -1, 1, 0],
    [0, 0, -1, 1],
    [0, 0, 0, -1],
])


class TestPolynomialBound:
    def test_paper_quartic(self):
        assert gc_polynomial_bound(normalize(P("1,-3,3,-3,1"))) == 2

    def test_square_polynomial(self):
        assert gc_polynomial_bound(normalize(P("1,-2,3,-2,1"))) == 0

    def test_phi10(self):
        assert gc_polynomial_bound(cyclotomic_phi_2p(5)) == 2

    def test_asymmetric_factors_ignored(self):
        assert gc_polynomial_bound(normalize(P("2,-5,2"))) == 0

    def test_precondition(self):
        with pytest.raises(DomainError):
            gc_polynomial_bound(normalize(P("1,1,1")))

    def test_submultiplicative(self):
        rng = random.Random(3)
        polys = [P("1,-1,1"), P("1,-3,1"), P("2,-5,2"), P("1,-3,3,-3,1")]
        for _ in range(12):
            a, b = rng.choice(polys), rng.choice(polys)
            lhs = gc_polynomial_bound(normalize(a * b))
            rhs = gc_polynomial_bound(normalize(a)) + gc_polynomial_bound(normalize(b))
            assert lhs <= rhs


class TestMilnorBound:
    def test_granny(self):
        assert gc_milnor_bound(GRANNY) == 2

    def test_square(self):
        assert gc_milnor_bound(SQUARE) == 0

    def test_doubled_torus_knot(self):
        doubled = TORUS_2_5.block_sum(TORUS_2_5)
        assert gc_milnor_bound(doubled) == 4  # = deg(phi_10) = p - 1

    def test_mirror_cancellation(self):
        assert gc_milnor_bound(TORUS_2_5.block_sum(TORUS_2_5.mirror())) == 0

    def test_strict_mode_at_least_default(self):
        for v in (TREFOIL, GRANNY, TORUS_2_5):
            assert gc_milnor_bound(v, strict=True) >= gc_milnor_bound(v)


class TestG4Bound:
    def test_granny(self):
        assert g4_signature_bound(GRANNY) == 2

    def test_slice_block(self):
        assert g4_signature_bound(SLICE_BLOCK) == 0

    def test_trefoil(self):
        assert g4_signature_bound(TREFOIL) == 1


class TestCombine:
    def test_paper_6_2(self):
        bounds = combine_bounds(normalize(P("1,-3,3,-3,1")), genus=2,
                                abs_signature=2)
        assert bounds.status == "polynomial"
        assert bounds.resolved_gc == 2
        assert bounds.g4_lower == 1

    def test_concordance_resolution(self):
        # an 8_10-like record: polynomial bound 1, genus 3, target genus 1
        delta = normalize(P("1,-1,1") * P("1,-1,1") * P("1,-3,1"))
        bounds = combine_bounds(delta, genus=3, abs_signature=2,
                                concordance_gc=1)
        assert bounds.status == "concordance"
        assert bounds.resolved_gc == 1
        assert bounds.gc_lower == 1

    def test_unresolved(self):
        delta = normalize(P("1,-1,1") * P("1,-1,1") * P("1,-3,1"))
        bounds = combine_bounds(delta, genus=3, abs_signature=2)
        assert bounds.status == "unresolved"
        assert bounds.resolved_gc is None

    def test_slice(self):
        bounds = combine_bounds(normalize(P("1,-2,3,-2,1")), genus=2,
                                abs_signature=0, slice_flag=True)
        assert bounds.status == "slice"
        assert bounds.resolved_gc == 0

    def test_milnor_resolution(self):
        bounds = combine_bounds(normalize(P("1,-2,3,-2,1")), seifert=GRANNY,
                                genus=2)
        assert bounds.status == "milnor"
        assert bounds.resolved_gc == 2

    def test_integrity_error(self):
        with pytest.raises(DataIntegrityError):
            combine_bounds(normalize(P("1,-3,3,-3,1")), genus=1)

    def test_slice_with_nonzero_signature_rejected(self):
        with pytest.raises(DataIntegrityError):
            combine_bounds(normalize(P("1,-2,3,-2,1")), abs_signature=4,
                           slice_flag=True)
