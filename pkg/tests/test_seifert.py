import random
from fractions import Fraction

import pytest

from knotgenus.errors import DomainError, OnJumpError
from knotgenus.exactlinalg import det_int, mat_eq, mat_mul, to_fractions, transpose
from knotgenus.laurent import LaurentPolynomial, factor, normalize
from knotgenus.seifert import (
    SeifertMatrix,
    alexander_polynomial,
    branched_cover_homology,
    classical_signature,
    compact_form,
    isometric_structure,
    milnor_signatures,
    milnor_theta_signature,
    signature_function,
    symmetric_factor_roots,
    tl_signature_at_circle_point,
    tristram_levine_signature,
    validate,
    witt_reduce,
)

P = LaurentPolynomial.parse

TREFOIL = validate([[-1, 1], [0, -1]])
FIG8 = validate([[1, 1], [0, -1]])
SLICE_BLOCK = validate([[0, 1], [2, 0]])
GRANNY = TREFOIL.block_sum(TREFOIL)
SQUARE = TREFOIL.block_sum(TREFOIL.mirror())


def random_seifert(rng, size, bound=2, attempts=2000):
    for _ in range(attempts):
        rows = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        skew = [[rows[i][j] - rows[j][i] for j in range(size)] for i in range(size)]
        if det_int(skew) in (1, -1):
            return validate(rows)
    raise RuntimeError("no valid Seifert matrix found")


class TestValidate:
    def test_valid(self):
        validate([[-1, 1], [0, -1]])
        validate([[0, 1], [2, 0]])

    def test_invalid(self):
        with pytest.raises(DomainError):
            validate([[1, 1], [1, 1]])
        with pytest.raises(DomainError):
            validate([[1, 2], [0, 1], [0, 0]])

    def test_empty(self):
        assert validate([]).size == 0

    def test_parse_roundtrip(self):
        assert SeifertMatrix.parse("0,1;2,0") == SLICE_BLOCK


class TestAlexander:
    def test_slice_block(self):
        assert alexander_polynomial(SLICE_BLOCK).poly == P("2,-5,2")

    def test_granny(self):
        assert alexander_polynomial(GRANNY).poly == P("1,-2,3,-2,1")

    def test_square_same_polynomial(self):
        assert alexander_polynomial(SQUARE).poly == P("1,-2,3,-2,1")

    def test_unknot(self):
        assert alexander_polynomial(validate([])).poly == LaurentPolynomial.one()

    def test_trefoil(self):
        assert alexander_polynomial(TREFOIL).poly == P("1,-1,1")

    def test_figure_eight(self):
        assert alexander_polynomial(FIG8).poly == P("1,-3,1")

    def test_multiplicative_under_block_sum(self):
        rng = random.Random(23)
        for _ in range(10):
            a = random_seifert(rng, 2)
            b = random_seifert(rng, 2)
            prod = alexander_polynomial(a).poly * alexander_polynomial(b).poly
            assert normalize(prod).poly == alexander_polynomial(a.block_sum(b)).poly


class TestClassicalSignature:
    def test_trefoil(self):
        assert classical_signature(TREFOIL) == -2

    def test_granny_magnitude(self):
        assert abs(classical_signature(GRANNY)) == 4
        assert classical_signature(GRANNY.mirror()) == 4

    def test_slice_block(self):
        assert classical_signature(SLICE_BLOCK) == 0

    def test_additive_under_block_sum(self):
        rng = random.Random(29)
        for _ in range(10):
            a = random_seifert(rng, 2)
            b = random_seifert(rng, 4)
            assert (classical_signature(a.block_sum(b))
                    == classical_signature(a) + classical_signature(b))

    def test_congruence_invariance(self):
        rng = random.Random(31)
        for _ in range(10):
            a = random_seifert(rng, 4)
            p = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
            if abs(det_int(p)) != 1:
                continue
            conj = mat_mul(transpose(p), mat_mul(a.rows(), p))
            assert classical_signature(validate(conj)) == classical_signature(a)


class TestTristramLevine:
    def test_trefoil_third(self):
        assert tristram_levine_signature(TREFOIL, Fraction(1, 3)) == -2

    def test_conjugation_symmetry(self):
        rng = random.Random(37)
        for _ in range(5):
            v = random_seifert(rng, 4)
            for angle in (Fraction(1, 3), Fraction(1, 5), Fraction(2, 7)):
                try:
                    left = tristram_levine_signature(v, angle)
                    right = tristram_levine_signature(v, 1 - angle)
                except OnJumpError:
                    continue
                assert left == right

    def test_slice_block_third(self):
        assert tristram_levine_signature(SLICE_BLOCK, Fraction(1, 3)) == 0

    def test_bad_angle(self):
        with pytest.raises(DomainError):
            tristram_levine_signature(TREFOIL, Fraction(3, 2))

    def test_on_jump(self):
        # trefoil jump is at 1/6 of a turn (angle pi/3)
        with pytest.raises(OnJumpError) as info:
            tristram_levine_signature(TREFOIL, Fraction(1, 6))
        assert {info.value.left_value, info.value.right_value} == {0, -2}

    def test_matches_circle_point_sampling(self):
        # cyclotomic and Gaussian-rational routes agree on arcs
        rng = random.Random(41)
        for _ in range(5):
            v = random_seifert(rng, 4)
            sf = signature_function(v)
            for angle, turn in ((Fraction(1, 3), None), (Fraction(1, 5), None)):
                try:
                    value = tristram_levine_signature(v, angle)
                except OnJumpError:
                    continue
                # locate the arc containing 2cos(2 pi angle) numerically:
                # angles here avoid jumps, so float comparison is safe
                import math

                z = 2 * math.cos(2 * math.pi * float(angle))
                idx = 0
                for jump in sf.jumps:
                    jump.location.refine_below_width(Fraction(1, 10**9))
                    if z < float(jump.location.lo):
                        idx += 1
                assert sf.arc_values[idx] == value


class TestCompactForm:
    def test_trefoil_factor(self):
        assert compact_form(P("1,-1,1")) == (-1, 1)

    def test_phi10(self):
        # t^4 - t^3 + t^2 - t + 1 = t^2 (g(z)) with g = z^2 - z - 1
        assert compact_form(P("1,-1,1,-1,1")) == (-1, -1, 1)

    def test_non_palindrome_rejected(self):
        with pytest.raises(DomainError):
            compact_form(P("1,1,2"))


class TestSignatureFunction:
    def test_trefoil(self):
        sf = signature_function(TREFOIL)
        assert len(sf.jumps) == 1
        assert sf.arc_values == (0, -2)
        loc = sf.jumps[0].location
        assert loc.min_poly == (-1, 1)  # z = 1, angle pi/3

    def test_slice_block_constant_zero(self):
        sf = signature_function(SLICE_BLOCK)
        assert sf.jumps == ()
        assert sf.arc_values == (0,)

    def test_granny(self):
        sf = signature_function(GRANNY)
        assert len(sf.jumps) == 1
        assert sf.arc_values == (0, -4)
        assert sf.jump_sizes() == (-4,)

    def test_figure_eight_no_jumps(self):
        sf = signature_function(FIG8)
        assert sf.arc_values == (0,)

    def test_first_arc_is_zero(self):
        rng = random.Random(43)
        for size in (2, 4):
            for _ in range(5):
                v = random_seifert(rng, size)
                sf = signature_function(v)
                assert sf.arc_values[0] == 0
                assert all(value % 2 == 0 for value in sf.arc_values)

    def test_last_arc_matches_classical_signature(self):
        # at theta -> pi the form tends to V + V^t; for odd determinant
        # forms the value at the end arc equals the classical signature
        rng = random.Random(47)
        for _ in range(8):
            v = random_seifert(rng, 4)
            sf = signature_function(v)
            assert sf.arc_values[-1] == classical_signature(v)


class TestIsometricStructure:
    def test_trefoil(self):
        s = isometric_structure(TREFOIL)
        b, t = s.matrices()
        assert b == to_fractions([[-2, 1], [1, -2]])
        assert mat_eq(mat_mul(transpose(t), mat_mul(b, t)), b)

    def test_char_poly_is_alexander(self):
        # 2x2 case: char(T) = t^2 - tr t + det ~ Alexander
        s = isometric_structure(SLICE_BLOCK)
        _, t = s.matrices()
        tr = t[0][0] + t[1][1]
        det = t[0][0] * t[1][1] - t[0][1] * t[1][0]
        assert tr == Fraction(5, 2) and det == 1

    def test_preserves_form_random(self):
        rng = random.Random(53)
        for _ in range(10):
            v = random_seifert(rng, 4)
            s = isometric_structure(v)
            b, t = s.matrices()
            assert mat_eq(mat_mul(transpose(t), mat_mul(b, t)), b)


class TestWittReduce:
    def test_nonsingular_passthrough(self):
        assert witt_reduce(TREFOIL) == TREFOIL

    def test_singular_reduction(self):
        v = validate([[0, 1], [0, 0]])  # det V = 0, Alexander ~ 1
        reduced = witt_reduce(v)
        assert reduced.size == 0

    def test_reduction_preserves_alexander(self):
        # pad the trefoil with a trivial stabilization block
        v = validate([
            [-1, 1, 0, 0],
            [0, -1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
        ])
        reduced = witt_reduce(v)
        assert reduced.size == 2
        assert alexander_polynomial(reduced).poly == P("1,-1,1")
        assert classical_signature(reduced) == classical_signature(TREFOIL)


class TestMilnorSignatures:
    def test_trefoil(self):
        sigs = milnor_signatures(TREFOIL)
        assert len(sigs) == 1
        fac, root, value = sigs[0]
        assert fac == P("1,-1,1")
        assert value == -2

    def test_granny(self):
        sigs = milnor_signatures(GRANNY)
        assert len(sigs) == 1
        assert sigs[0][2] == -4

    def test_square_vanishes(self):
        sigs = milnor_signatures(SQUARE)
        assert len(sigs) == 1
        assert sigs[0][2] == 0

    def test_slice_block_no_symmetric_factors(self):
        assert milnor_signatures(SLICE_BLOCK) == []
        with pytest.raises(DomainError):
            from knotgenus.numberfield import RealAlgebraic

            milnor_theta_signature(
                SLICE_BLOCK, P("1,-1,1"),
                RealAlgebraic((-1, 1), Fraction(1), Fraction(1)))

    def test_sum_equals_classical_signature(self):
        rng = random.Random(59)
        checked = 0
        for _ in range(12):
            v = random_seifert(rng, 4)
            total = sum(value for _, _, value in milnor_signatures(v))
            assert total == classical_signature(v)
            checked += 1
        assert checked == 12

    def test_jump_convention(self):
        # pinned: sigma_theta = arc right of theta - arc left of theta
        rng = random.Random(61)
        matrices = [TREFOIL, FIG8, GRANNY] + [random_seifert(rng, 4) for _ in range(8)]
        for v in matrices:
            sf = signature_function(v)
            sizes = sf.jump_sizes()
            for k, jump in enumerate(sf.jumps):
                milnor = milnor_theta_signature(v, jump.factor, jump.location)
                assert milnor == sizes[k]


class TestBranchedCoverHomology:
    def test_slice_block(self):
        h = branched_cover_homology(SLICE_BLOCK)
        assert h.invariant_factors == (3, 3)
        assert h.order == 9

    def test_trefoil(self):
        h = branched_cover_homology(TREFOIL)
        assert h.invariant_factors == (3,)

    def test_n_block(self):
        v = SLICE_BLOCK
        for n in (2, 3):
            block = v
            for _ in range(n - 1):
                block = block.block_sum(v)
            h = branched_cover_homology(block)
            assert h.invariant_factors == (3,) * (2 * n)
            assert h.order == 9**n

    def test_order_equals_alexander_at_minus_one(self):
        rng = random.Random(67)
        for size in (2, 4):
            for _ in range(8):
                v = random_seifert(rng, size)
                h = branched_cover_homology(v)
                delta = alexander_polynomial(v)
                assert h.order == abs(delta.evaluate(-1))
