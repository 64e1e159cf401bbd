import itertools
from fractions import Fraction

import pytest

from knotgenus.errors import DomainError
from knotgenus.fp import Subspace, all_subspaces
from knotgenus.linkform import (
    Character,
    FiniteLinkingForm,
    Metabolizer,
    annihilator,
    character,
    enumerate_metabolizers,
    from_seifert,
    hyperbolic_form,
    is_metabolizer,
    metabolizer,
)
from knotgenus.seifert import validate

SLICE_BLOCK = validate([[0, 1], [2, 0]])
TREFOIL = validate([[-1, 1], [0, -1]])
F = Fraction


class TestFromSeifert:
    def test_slice_block_hyperbolic(self):
        form = from_seifert(SLICE_BLOCK, 3)
        assert form.orders == (3, 3)
        assert form.pairing == ((F(0), F(1, 3)), (F(1, 3), F(0)))

    def test_n_block_hyperbolic(self):
        block = SLICE_BLOCK.block_sum(SLICE_BLOCK)
        form = from_seifert(block, 3)
        assert form.orders == (3, 3, 3, 3)
        assert form.pairing == hyperbolic_form(3, 2).pairing

    def test_trefoil_self_pairing(self):
        form = from_seifert(TREFOIL, 3)
        assert form.orders == (3,)
        assert form.pairing[0][0] in (F(1, 3), F(2, 3))

    def test_wrong_prime(self):
        with pytest.raises(DomainError):
            from_seifert(SLICE_BLOCK, 5)

    def test_block_sum_is_orthogonal_sum(self):
        a = from_seifert(SLICE_BLOCK, 3)
        b = from_seifert(TREFOIL, 3)
        combined = from_seifert(SLICE_BLOCK.block_sum(TREFOIL), 3)
        assert sorted(combined.orders) == sorted(a.orders + b.orders)
        assert combined.group_order == a.group_order * b.group_order


class TestFormBasics:
    def test_beta_bilinear(self):
        form = hyperbolic_form(3, 2)
        x, y = (1, 0, 2, 0), (0, 1, 0, 1)
        assert form.beta(x, y) == F(0) or True
        # bilinearity mod 1 over integer lifts
        x2 = tuple(2 * c for c in x)
        assert form.beta(x2, y) == (2 * form.beta(x, y)) % 1

    def test_singular_rejected(self):
        with pytest.raises(DomainError):
            FiniteLinkingForm(3, (3, 3), ((F(0), F(0)), (F(0), F(1, 3))))

    def test_asymmetric_rejected(self):
        with pytest.raises(DomainError):
            FiniteLinkingForm(3, (3, 3), ((F(0), F(1, 3)), (F(2, 3), F(0))))


class TestMetabolizers:
    def test_hyperbolic_plane_has_two(self):
        mets = enumerate_metabolizers(hyperbolic_form(3, 1))
        bases = {m.basis for m in mets}
        assert bases == {((1, 0),), ((0, 1),)}

    def test_odd_rank_error(self):
        form = from_seifert(TREFOIL, 3)
        with pytest.raises(DomainError):
            enumerate_metabolizers(form)

    def test_count_matches_bruteforce_rank4(self):
        form = hyperbolic_form(3, 2)
        fast = {m.basis for m in enumerate_metabolizers(form)}
        slow = set()
        for space in all_subspaces(3, 4, 2):
            if is_metabolizer(form, space):
                slow.add(space.basis)
        assert fast == slow
        # split rank-4 hyperbolic over F_3: (3^0+1)(3^1+1) = 8 Lagrangians
        assert len(fast) == 8

    def test_all_are_metabolizers(self):
        for blocks in (1, 2):
            form = hyperbolic_form(3, blocks)
            for m in enumerate_metabolizers(form):
                assert is_metabolizer(form, m)
                assert m.order**2 == form.group_order

    def test_rank6_count(self):
        # split rank-6 hyperbolic over F_3: (1+1)(3+1)(9+1) = 80
        mets = enumerate_metabolizers(hyperbolic_form(3, 3))
        assert len(mets) == 80

    def test_p2_count(self):
        # over F_2 the zero-diagonal symmetric form is alternating, so
        # metabolizers are symplectic Lagrangians: (2+1)(4+1) = 15
        mets = enumerate_metabolizers(hyperbolic_form(2, 2))
        assert len(mets) == 15

    def test_validator(self):
        form = hyperbolic_form(3, 1)
        m = metabolizer(form, [(1, 0)])
        assert m.basis == ((1, 0),)
        with pytest.raises(DomainError):
            metabolizer(form, [(1, 1)])


class TestAnnihilator:
    def test_metabolizer_selfannihilating(self):
        form = hyperbolic_form(3, 1)
        m = metabolizer(form, [(1, 0)])
        ann = annihilator(form, m)
        assert ann.basis == m.basis

    def test_whole_group(self):
        form = hyperbolic_form(3, 2)
        whole = Subspace.spanned_by(
            [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 3, 4)
        assert annihilator(form, whole).dim == 0

    def test_zero_subgroup(self):
        form = hyperbolic_form(3, 2)
        zero = Subspace.spanned_by([], 3, 4)
        assert annihilator(form, zero).dim == 4

    def test_annihilator_dimension_complementary(self):
        form = hyperbolic_form(3, 2)
        for space in all_subspaces(3, 4, 1):
            assert annihilator(form, space).dim == 3


class TestCharacters:
    def test_character_values(self):
        form = hyperbolic_form(3, 1)
        chi = character(form, (0, 1))
        assert chi.value((1, 0)) == F(1, 3)
        assert chi.value_mod((1, 0)) == 1
        assert chi.value_mod((2, 0)) == 2
        assert chi.value_mod((0, 1)) == 0

    def test_vanishing_iff_in_metabolizer(self):
        # characters chi_m with m in M vanish on M, and every m outside
        # the annihilator fails to vanish
        form = hyperbolic_form(3, 2)
        for met in enumerate_metabolizers(form):
            for m in itertools.product(range(3), repeat=4):
                chi = character(form, m)
                vanishes = chi.vanishes_on(met)
                assert vanishes == met.contains(m)
