import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvhilbert import groups, variables
from cvhilbert.errors import NotAccessible, NotPermissible
from cvhilbert.spin import axis_component_variable, octahedral_axes_action


def shift_action(n):
    g = groups.standard_group("cyclic", n)
    return groups.build_action(g, [[(x + k) % n for x in range(n)] for k in range(n)])


def trivial_action(m):
    g = groups.build_group([[0]])
    return groups.build_action(g, [list(range(m))])


PARITY4 = variables.make_variable("parity", [0, 1, 0, 1], numeric_values=[0.0, 1.0])
IDENT4 = variables.make_variable("point", [0, 1, 2, 3], numeric_values=[0.0, 1.0, 2.0, 3.0])
CONST4 = variables.make_variable("const", [0, 0, 0, 0], numeric_values=[1.0])


class TestPartitions:
    def test_constant_single_block(self):
        assert variables.induced_partition(CONST4).blocks == ((0, 1, 2, 3),)

    def test_identity_singletons(self):
        v = variables.make_variable("id3", [0, 1, 2])
        assert variables.induced_partition(v).blocks == ((0,), (1,), (2,))

    def test_parity_blocks(self):
        assert variables.induced_partition(PARITY4).blocks == ((0, 2), (1, 3))


class TestPermissibility:
    def test_trivial_group_always_permissible(self):
        ok, witness = variables.is_permissible(PARITY4, trivial_action(4))
        assert ok and witness is None

    def test_parity_under_shifts(self):
        ok, _ = variables.is_permissible(PARITY4, shift_action(4))
        assert ok

    def test_axis_component_rejected_in_3d(self):
        action = octahedral_axes_action()
        var = axis_component_variable("z")
        ok, witness = variables.is_permissible(var, action)
        assert not ok
        k, p1, p2 = witness
        # equal components before, different after
        assert var.values[p1] == var.values[p2]
        moved1 = var.values[action.apply(k, p1)]
        moved2 = var.values[action.apply(k, p2)]
        assert moved1 != moved2

    @given(st.integers(min_value=2, max_value=6), st.data())
    def test_witnesses_are_valid(self, n, data):
        action = shift_action(n)
        table = data.draw(st.lists(
            st.integers(min_value=0, max_value=2), min_size=n, max_size=n))
        if len(set(table)) < max(table) + 1:
            table = [v - min(table) for v in table]
        try:
            var = variables.make_variable("v", table)
        except ValueError:
            return
        ok, witness = variables.is_permissible(var, action)
        if not ok:
            k, p1, p2 = witness
            assert var.values[p1] == var.values[p2]
            assert (var.values[action.apply(k, p1)]
                    != var.values[action.apply(k, p2)])


class TestInducedGroup:
    def test_constant_gives_trivial_group(self):
        g, act, hom = variables.induced_group(CONST4, shift_action(4))
        assert g.order == 1

    def test_parity_under_shifts(self):
        g, act, hom = variables.induced_group(PARITY4, shift_action(4))
        assert g.order == 2
        # even shifts act trivially on the two values
        assert hom == (0, 1, 0, 1)

    def test_identity_variable_faithful(self):
        g, act, hom = variables.induced_group(IDENT4, shift_action(4))
        assert g.order == 4
        assert len(set(hom)) == 4

    def test_not_permissible_raises(self):
        action = octahedral_axes_action()
        var = axis_component_variable("z")
        with pytest.raises(NotPermissible):
            variables.induced_group(var, action)

    def test_induced_action_matches_defining_equation(self):
        g, act, hom = variables.induced_group(PARITY4, shift_action(4))
        base = shift_action(4)
        for k in range(base.group.order):
            for p in range(4):
                lhs = act.apply(hom[k], PARITY4.values[p])
                rhs = PARITY4.values[base.apply(k, p)]
                assert lhs == rhs


class TestRefinesAndAccessibility:
    def test_refines_self(self):
        f, strict = variables.refines(PARITY4, PARITY4)
        assert f == (0, 1) and not strict

    def test_identity_refines_parity(self):
        f, strict = variables.refines(IDENT4, PARITY4)
        assert f == (0, 1, 0, 1) and strict

    def test_parity_does_not_refine_identity(self):
        assert variables.refines(PARITY4, IDENT4) is None

    def test_refines_is_reflexive_and_transitive(self):
        coarser = variables.make_variable("half", [0, 0, 1, 1])
        chain = [IDENT4, PARITY4, CONST4, coarser]
        for v in chain:
            got = variables.refines(v, v)
            assert got is not None and not got[1]
        for a in chain:
            for b in chain:
                for c in chain:
                    if variables.refines(a, b) and variables.refines(b, c):
                        assert variables.refines(a, c) is not None

    def test_accessibility_through_family(self):
        ctx = variables.Context(4, shift_action(4), (PARITY4,))
        assert variables.is_accessible(ctx, CONST4)
        assert variables.is_accessible(ctx, PARITY4)
        assert not variables.is_accessible(ctx, IDENT4)

    def test_maximality(self):
        ctx = variables.Context(4, shift_action(4), (PARITY4,))
        assert variables.is_maximally_accessible(ctx, PARITY4)
        assert not variables.is_maximally_accessible(ctx, CONST4)
        with pytest.raises(NotAccessible):
            variables.is_maximally_accessible(ctx, IDENT4)

    def test_coarsening_of_family_member_not_maximal(self):
        ident_ctx = variables.Context(4, shift_action(4), (IDENT4,))
        merged = variables.make_variable("merged", [0, 0, 1, 2])
        assert variables.is_accessible(ident_ctx, merged)
        assert not variables.is_maximally_accessible(ident_ctx, merged)


class TestComplementarity:
    def test_self_not_complementary(self):
        ctx = variables.Context(4, shift_action(4), (PARITY4,))
        assert not variables.are_complementary(PARITY4, PARITY4, ctx)

    def test_two_bit_family_complementary(self):
        flips = groups.generate_permutation_group([(2, 3, 0, 1), (1, 0, 3, 2)])[1]
        bit1 = variables.make_variable("bit1", [0, 0, 1, 1])
        bit2 = variables.make_variable("bit2", [0, 1, 0, 1])
        ctx = variables.Context(4, flips, (bit1, bit2))
        assert variables.are_complementary(bit1, bit2, ctx)

    def test_coarsening_not_complementary(self):
        flips = groups.generate_permutation_group([(2, 3, 0, 1), (1, 0, 3, 2)])[1]
        bit1 = variables.make_variable("bit1", [0, 0, 1, 1])
        bit2 = variables.make_variable("bit2", [0, 1, 0, 1])
        ctx = variables.Context(4, flips, (bit1, bit2))
        assert not variables.are_complementary(bit1, bit1, ctx)

    def test_symmetry(self):
        flips = groups.generate_permutation_group([(2, 3, 0, 1), (1, 0, 3, 2)])[1]
        bit1 = variables.make_variable("bit1", [0, 0, 1, 1])
        bit2 = variables.make_variable("bit2", [0, 1, 0, 1])
        ctx = variables.Context(4, flips, (bit1, bit2))
        assert (variables.are_complementary(bit1, bit2, ctx)
                == variables.are_complementary(bit2, bit1, ctx))


class TestRelatingTransformations:
    def test_self_relation_contains_identity(self):
        action = shift_action(4)
        ks = variables.find_relating_transformations(PARITY4, PARITY4, action)
        assert action.group.identity in ks

    def test_two_bit_swap(self):
        group, action = groups.generate_permutation_group([(0, 2, 1, 3)])
        bit1 = variables.make_variable("bit1", [0, 0, 1, 1])
        bit2 = variables.make_variable("bit2", [0, 1, 0, 1])
        ks = variables.find_relating_transformations(bit1, bit2, action)
        swap_index = next(
            i for i in range(group.order)
            if action.permutation(i) == (0, 2, 1, 3)
        )
        assert swap_index in ks
        assert group.mult(swap_index, swap_index) == group.identity

    def test_unrelated_ranges_empty(self):
        action = shift_action(4)
        assert variables.find_relating_transformations(PARITY4, CONST4, action) == []

    def test_inverse_direction(self):
        group, action = groups.generate_permutation_group([(0, 2, 1, 3)])
        bit1 = variables.make_variable("bit1", [0, 0, 1, 1])
        bit2 = variables.make_variable("bit2", [0, 1, 0, 1])
        forward = variables.find_relating_transformations(bit1, bit2, action)
        backward = variables.find_relating_transformations(bit2, bit1, action)
        for k in forward:
            assert group.inv(k) in backward
