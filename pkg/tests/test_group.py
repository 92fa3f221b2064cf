from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from voltclust.errors import (
    ClosureBoundExceeded,
    ForeignElement,
    InvalidMatrix,
    InvalidSpec,
)
from voltclust.group import (
    FiniteGroup,
    Subgroup,
    canonical_key,
    generate_closure,
    reflection_matrix,
    rotation_matrix,
    standard_point_group,
)


class TestCanonicalKey:
    def test_absorbs_subtolerance_noise(self):
        eye = np.eye(2)
        assert canonical_key(eye) == canonical_key(eye + 1e-12)

    def test_distinct_matrices_differ(self):
        r = rotation_matrix(6)
        assert canonical_key(r) != canonical_key(r.T)

    def test_reflection_is_its_own_inverse(self):
        ref = reflection_matrix((1, 0))
        assert canonical_key(ref) == canonical_key(np.linalg.inv(ref))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidMatrix):
            canonical_key(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_negative_zero_is_zero(self):
        assert canonical_key(np.array([[-1e-13]])) == canonical_key(np.array([[0.0]]))


class TestGenerateClosure:
    def test_cyclic_6_has_order_6(self, c6):
        assert c6.order == 6

    def test_dihedral_6_has_order_12(self, d6):
        assert d6.order == 12

    def test_empty_generators_give_trivial_group(self):
        g = generate_closure([], dimension=2)
        assert g.order == 1
        assert np.array_equal(g.matrix(0), np.eye(2))

    def test_irrational_rotation_exceeds_bound(self):
        one_radian = np.array(
            [[math.cos(1.0), -math.sin(1.0)], [math.sin(1.0), math.cos(1.0)]]
        )
        with pytest.raises(ClosureBoundExceeded):
            generate_closure([one_radian], max_order=10000)

    def test_non_orthogonal_generator_rejected(self):
        with pytest.raises(InvalidMatrix):
            generate_closure([np.array([[1.0, 1.0], [0.0, 1.0]])])

    def test_closure_is_idempotent(self, d6):
        again = generate_closure(list(d6.matrices), names=None)
        assert again.order == d6.order

    def test_all_elements_orthogonal(self, d6):
        for m in d6.matrices:
            assert np.max(np.abs(m.T @ m - np.eye(2))) <= 1e-9

    @given(st.integers(min_value=1, max_value=12))
    def test_cyclic_order_matches_n(self, n):
        assert standard_point_group("cyclic", n=n).order == n

    def test_cayley_matches_matrix_products(self, d6):
        for a, b in itertools.product(range(d6.order), repeat=2):
            prod = d6.matrix(a) @ d6.matrix(b)
            assert d6.find(prod).index == d6.cayley[a][b]


class TestArithmetic:
    def test_rot_times_rot_is_third_turn(self, c6):
        rot = c6.element(c6.generator_indices[0])
        assert np.allclose((rot * rot).matrix, rotation_matrix(3), atol=1e-12)

    def test_reflection_is_involution(self, d6):
        ref = d6.element(d6.generator_indices[1])
        assert ref.inverse() == ref

    def test_every_element_times_inverse_is_identity(self, d6):
        for i in range(d6.order):
            assert d6.mul(i, d6.inv(i)) == 0
            assert d6.mul(d6.inv(i), i) == 0

    def test_associativity_exhaustive(self, d6):
        for a, b, c in itertools.product(range(d6.order), repeat=3):
            assert d6.mul(d6.mul(a, b), c) == d6.mul(a, d6.mul(b, c))

    def test_out_of_range_index_is_foreign(self, c6):
        with pytest.raises(ForeignElement):
            c6.mul(0, 99)

    def test_element_of_other_group_is_foreign(self, c6, d6):
        with pytest.raises(ForeignElement):
            c6.multiply(c6.identity, d6.identity)


class TestSubgroups:
    def test_empty_set_generates_trivial_subgroup(self, d6):
        assert d6.subgroup_generated([]).members == (0,)

    def test_reflection_generates_order_two(self, d6):
        ref = d6.generator_indices[1]
        sub = d6.subgroup_generated([ref])
        assert sub.members == (0, ref)

    def test_rotation_generates_order_six(self, d6):
        sub = d6.subgroup_generated([d6.generator_indices[0]])
        assert sub.order == 6

    def test_lagrange_for_all_cyclic_subgroups(self, d6):
        for i in range(d6.order):
            assert d6.order % d6.subgroup_generated([i]).order == 0

    def test_invalid_member_set_rejected(self, d6):
        rot = d6.generator_indices[0]
        with pytest.raises(InvalidSpec):
            Subgroup(d6, (0, rot))  # not closed: rot^2 missing


class TestCosets:
    def test_whole_group_is_single_coset(self, d6):
        whole = d6.subgroup_generated(range(d6.order))
        assert d6.cosets(whole, "left") == (tuple(range(12)),)

    def test_trivial_subgroup_gives_singletons(self, c6):
        sub = c6.subgroup_generated([])
        assert c6.cosets(sub, "left") == tuple((i,) for i in range(6))

    def test_reflection_subgroup_has_six_right_cosets(self, d6):
        sub = d6.subgroup_generated([d6.generator_indices[1]])
        cosets = d6.cosets(sub, "right")
        assert len(cosets) == 6

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_cosets_partition_the_group(self, d6, side):
        sub = d6.subgroup_generated([d6.generator_indices[1]])
        cosets = d6.cosets(sub, side)
        flat = [x for c in cosets for x in c]
        assert sorted(flat) == list(range(12))
        assert [c[0] for c in cosets] == sorted(c[0] for c in cosets)

    def test_bad_side_rejected(self, d6):
        with pytest.raises(InvalidSpec):
            d6.cosets(d6.subgroup_generated([]), "sideways")


class TestConjugation:
    def test_identity_conjugation_is_noop(self, d6):
        sub = d6.subgroup_generated([d6.generator_indices[1]])
        assert d6.conjugate_subgroup(sub, 0) == sub

    def test_rotation_moves_the_reflection_axis(self, d6):
        # rot^-1 . ref_(1,0) . rot is the reflection across (1,0) rotated by -pi/3
        rot, ref = d6.generator_indices
        sub = d6.subgroup_generated([ref])
        conj = d6.conjugate_subgroup(sub, rot)
        axis = rotation_matrix(6).T @ np.array([1.0, 0.0])
        expected = d6.find(reflection_matrix(axis)).index
        assert conj.members == tuple(sorted((0, expected)))

    def test_normal_subgroup_is_invariant(self, d6):
        rotations = d6.subgroup_generated([d6.generator_indices[0]])
        for g in range(d6.order):
            assert d6.conjugate_subgroup(rotations, g) == rotations

    def test_conjugates_have_equal_order(self, d6):
        for i in range(d6.order):
            sub = d6.subgroup_generated([i])
            for g in range(d6.order):
                assert d6.conjugate_subgroup(sub, g).order == sub.order


class TestStandardPointGroups:
    def test_sign_group_matrices(self, sign_group):
        assert sign_group.order == 2
        assert sign_group.dimension == 1
        assert np.array_equal(sign_group.matrix(0), [[1.0]])
        assert np.array_equal(sign_group.matrix(1), [[-1.0]])

    def test_zero_axis_rejected(self):
        with pytest.raises(InvalidMatrix):
            standard_point_group("dihedral", n=6, v=(0, 0))

    def test_zero_order_rejected(self):
        with pytest.raises(InvalidSpec):
            standard_point_group("cyclic", n=0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidSpec):
            standard_point_group("icosahedral")

    @given(st.integers(min_value=1, max_value=8))
    def test_dihedral_order_is_2n(self, n):
        assert standard_point_group("dihedral", n=n, v=(0.3, 1.7)).order == 2 * n


class TestWords:
    def test_identity_word(self, d6):
        assert d6.word(0) == "1"

    def test_words_round_trip(self, d6):
        for i in range(d6.order):
            assert d6.parse_word(d6.word(i)) == i

    def test_inverse_suffix(self, d6):
        rot = d6.generator_indices[0]
        assert d6.parse_word("rot~") == d6.inv(rot)

    def test_empty_word_is_identity(self, d6):
        assert d6.parse_word("") == 0
        assert d6.parse_word("1") == 0

    def test_unknown_name_rejected(self, d6):
        with pytest.raises(InvalidSpec):
            d6.parse_word("spin")


def test_find_rejects_foreign_matrix(c6):
    with pytest.raises(ForeignElement):
        c6.find(reflection_matrix((1, 0)))


def test_identity_must_be_element_zero(c6):
    mats = list(c6.matrices)
    mats[0], mats[1] = mats[1], mats[0]
    with pytest.raises(InvalidSpec):
        FiniteGroup(2, mats, c6.cayley, c6.inverses)
