"""Constructors: every producing procedure re-verified through the checkers."""

from fractions import Fraction
from itertools import product

import pytest

from polysimplex.construct import (
    SolutionDescriptor,
    adjacent_pair_swaps,
    bar_sigma_conjugate,
    bialgebra_tower,
    conjugate,
    higher_mixed_pair,
    hopf_mixed_pair_antipode,
    hopf_pentagon_pair,
    invert_to_dual,
    multi_bialgebra_tower,
    simplex_from_mixed,
    simplex_map_from_pair_formula,
    stack,
    stack_arithmetic,
    trace_descend,
    trace_descend_mixed,
    verify_descriptor,
    yang_baxter_from_pair,
)
from polysimplex.hopf import cyclic_group, group_algebra, symmetric_group
from polysimplex.rings import RATIONAL
from polysimplex.tensor import (
    ShapeError,
    Tensor,
    compose,
    from_function,
    identity_tensor,
    partial_trace_left,
    partial_trace_right,
    tensor_product,
)
from polysimplex.verify import (
    PreconditionFailed,
    check_mixed,
    check_polygon,
    check_simplex,
    polygon_signature,
)

H2 = group_algebra(cyclic_group(2))
H3 = group_algebra(cyclic_group(3))
T2, S2 = hopf_pentagon_pair(H2)
T3, S3 = hopf_pentagon_pair(H3)

DELTA2 = from_function(2, 1, 2, lambda x: (x[0], x[0]))


def seeded_tensor(seed, d, in_legs, out_legs):
    entries = {}
    state = seed
    for out in product(range(d), repeat=out_legs):
        for inp in product(range(d), repeat=in_legs):
            state = (state * 48271 + 11) % (2**31 - 1)
            if state % 3:
                entries[(out, inp)] = Fraction(state % 5 - 2)
    return Tensor(d, in_legs, out_legs, entries)


class TestHopfPentagonPair:
    def test_z2_closed_forms(self):
        for g, h in product(range(2), repeat=2):
            assert T2.tensor.entry((g, (g + h) % 2), (g, h)) == 1
            assert S2.tensor.entry((g, (h - g) % 2), (g, h)) == 1

    def test_z3_pair_checks(self):
        assert check_polygon(T3.tensor, 5).holds
        assert check_polygon(S3.tensor, 5, dual=True).holds
        assert check_mixed(T3.tensor, S3.tensor, 5).holds

    def test_trivial_hopf_gives_identity_pair(self):
        t, s = hopf_pentagon_pair(group_algebra(cyclic_group(1)))
        assert t.tensor == identity_tensor(1, 2)
        assert s.tensor == identity_tensor(1, 2)

    def test_noncommutative_group_still_works(self):
        t, s = hopf_pentagon_pair(group_algebra(symmetric_group(3)), verify=False)
        assert check_polygon(t.tensor, 5).holds
        assert check_polygon(s.tensor, 5, dual=True).holds

    def test_all_abelian_groups_up_to_order_four(self):
        from polysimplex.hopf import direct_product

        groups = [cyclic_group(n) for n in (1, 2, 3, 4)]
        groups.append(direct_product(cyclic_group(2), cyclic_group(2)))
        for g in groups:
            t, s = hopf_pentagon_pair(group_algebra(g), verify=False)
            assert check_polygon(t.tensor, 5).holds
            assert check_polygon(s.tensor, 5, dual=True).holds
            assert check_mixed(t.tensor, s.tensor, 5).holds


class TestInvertToDual:
    def test_identity_3gon(self):
        one = SolutionDescriptor("polygon", 3, identity_tensor(2, 1))
        dual = invert_to_dual(one)
        assert dual.family == "dual-polygon"
        assert dual.tensor == identity_tensor(2, 1)

    def test_pentagon_inverse_formula(self):
        dual = invert_to_dual(T2)
        assert dual.family == "dual-polygon" and dual.order == 5
        for g, h in product(range(2), repeat=2):
            assert dual.tensor.entry((g, (h - g) % 2), (g, h)) == 1

    def test_round_trip_recovers_original(self):
        assert invert_to_dual(invert_to_dual(T2)).tensor == T2.tensor

    def test_singular_input_rejected(self):
        rank_deficient = SolutionDescriptor(
            "polygon", 5, from_function(2, 2, 2, lambda x: (x[0], x[0]))
        )
        with pytest.raises(PreconditionFailed):
            invert_to_dual(rank_deficient)


class TestConjugate:
    def test_identity_phi_is_noop(self):
        assert conjugate(T2, identity_tensor(2, 1)).tensor == T2.tensor

    def test_diagonal_phi_on_pentagon(self):
        phi = Tensor(2, 1, 1, {((0,), (0,)): 1, ((1,), (1,)): 2})
        out = conjugate(T2, phi)
        assert verify_descriptor(out).holds
        assert out.tensor != T2.tensor  # the conjugate is genuinely different

    def test_even_gon_shapes(self):
        tower6 = bialgebra_tower(6, H2)
        phi = Tensor(2, 1, 1, {((0,), (1,)): 1, ((1,), (0,)): 1})
        out = conjugate(tower6, phi)
        assert (out.tensor.in_legs, out.tensor.out_legs) == (2, 3)

    def test_singular_phi_rejected(self):
        phi = Tensor(2, 1, 1, {((0,), (0,)): 1})
        with pytest.raises(PreconditionFailed):
            conjugate(T2, phi)


class TestBarSigmaConjugate:
    def test_order_three_is_identity_transform(self):
        one = SolutionDescriptor("polygon", 3, identity_tensor(2, 1))
        assert bar_sigma_conjugate(one).tensor == one.tensor

    def test_pentagon_to_dual(self):
        out = bar_sigma_conjugate(T2)
        assert out.family == "dual-polygon"
        assert check_polygon(out.tensor, 5, dual=True).holds

    def test_even_case_keeps_family_and_shapes(self):
        tower6 = bialgebra_tower(6, H2)
        out = bar_sigma_conjugate(tower6)
        assert out.family == "polygon" and out.order == 6
        assert (out.tensor.in_legs, out.tensor.out_legs) == (2, 3)
        assert verify_descriptor(out).holds

    def test_order_four_both_families(self):
        delta4 = SolutionDescriptor("polygon", 4, H2.coproduct)
        mult4 = SolutionDescriptor("dual-polygon", 4, H2.product)
        for desc in (delta4, mult4):
            out = bar_sigma_conjugate(desc)
            assert out.family == desc.family and out.order == 4
            assert verify_descriptor(out).holds

    def test_involution_on_odd_orders(self):
        assert bar_sigma_conjugate(bar_sigma_conjugate(T2)).tensor == T2.tensor


class TestTraceDescend:
    def test_identity_pentagon_descends_to_identity(self):
        ident5 = SolutionDescriptor("polygon", 5, identity_tensor(2, 2))
        out = trace_descend(ident5)
        assert out.order == 3
        assert out.tensor == identity_tensor(2, 1)

    def test_seven_gon_tower_descends_to_pentagon(self):
        tower7 = bialgebra_tower(7, H2)
        out = trace_descend(tower7)
        assert out.order == 5
        assert check_polygon(out.tensor, 5).holds
        right = trace_descend(tower7, side="right")
        assert check_polygon(right.tensor, 5).holds

    def test_normalization_is_necessary(self):
        tower7 = bialgebra_tower(7, H2)
        raw = partial_trace_left(tower7.tensor)
        assert not check_polygon(raw, 5).holds

    def test_simplex_descent_has_no_normalization(self):
        r4 = simplex_from_mixed(T2, S2, drop="one")
        out = trace_descend(r4)
        assert out.order == 3 and out.family == "simplex"
        assert out.tensor == partial_trace_left(r4.tensor)

    def test_non_invertible_rejected(self):
        bad = SolutionDescriptor("polygon", 5, from_function(2, 2, 2, lambda x: (x[0], x[0])))
        with pytest.raises(PreconditionFailed):
            trace_descend(bad)

    def test_prime_field_normalization_needs_invertible_dimension(self):
        # 1/dim does not exist when the characteristic divides dim
        from polysimplex.rings import RingError, prime_field

        gf2 = prime_field(2)
        t = from_function(2, 2, 2, lambda x: (x[0], (x[0] + x[1]) % 2), gf2)
        desc = SolutionDescriptor("polygon", 5, t)
        with pytest.raises(RingError):
            trace_descend(desc)
        gf5 = prime_field(5)  # 5 does not divide dim = 3, so 1/3 exists
        t3 = from_function(3, 2, 2, lambda x: (x[0], (x[0] + x[1]) % 3), gf5)
        s3 = from_function(3, 2, 2, lambda x: (x[0], (x[1] - x[0]) % 3), gf5)
        tower = higher_mixed_pair(2, t3, s3, verify=False)[0]
        assert trace_descend(tower).tensor.ring is gf5


class TestTraceDescendMixed:
    def test_identity_pair_from_five_to_three(self):
        t5 = SolutionDescriptor("polygon", 5, identity_tensor(2, 2))
        s5 = SolutionDescriptor("dual-polygon", 5, identity_tensor(2, 2))
        new_t, new_s = trace_descend_mixed(t5, s5)
        assert new_t.tensor == identity_tensor(2, 1)
        assert new_s.tensor == identity_tensor(2, 1)

    def test_seven_gon_pair_descends_to_five(self):
        t7, s7 = higher_mixed_pair(2, T2.tensor, S2.tensor)
        new_t, new_s = trace_descend_mixed(t7, s7)
        assert new_t.order == 5
        assert check_mixed(new_t.tensor, new_s.tensor, 5).holds

    def test_right_side_variant(self):
        t7, s7 = higher_mixed_pair(2, T2.tensor, S2.tensor)
        new_t, new_s = trace_descend_mixed(t7, s7, side="right")
        assert check_mixed(new_t.tensor, new_s.tensor, 5).holds


class TestStack:
    def test_seven_gon_from_pentagon_pair(self):
        out = stack(T2, T2, "compose_left")
        assert out.family == "polygon" and out.order == 7
        assert check_polygon(out.tensor, 7).holds

    def test_eight_gon_with_diagonal(self):
        seven = stack(T2, T2, "compose_left")
        delta4 = SolutionDescriptor("polygon", 4, DELTA2)
        out = stack(seven, delta4, "compose_left")
        assert out.order == 8
        assert check_polygon(out.tensor, 8).holds

    def test_nine_gon_tensor_square(self):
        out = stack(T2, T2, "tensor")
        assert out.order == 9
        assert check_polygon(out.tensor, 9).holds

    def test_dual_stacking(self):
        out = stack(S2, S2, "compose_right")
        assert out.family == "dual-polygon" and out.order == 7
        assert check_polygon(out.tensor, 7, dual=True).holds

    def test_arithmetic_table_all_cases(self):
        # (x family, x order, y family, y order, mode) -> expected output
        cases = [
            ("polygon", 5, "polygon", 5, "compose_left", ("polygon", 7)),
            ("polygon", 5, "polygon", 4, "tensor", ("polygon", 8)),
            ("dual-polygon", 5, "dual-polygon", 5, "compose_right", ("dual-polygon", 7)),
            ("dual-polygon", 5, "dual-polygon", 6, "tensor", ("dual-polygon", 10)),
            ("dual-polygon", 4, "polygon", 5, "compose_left", ("dual-polygon", 6)),
            ("dual-polygon", 4, "polygon", 5, "tensor", ("dual-polygon", 8)),
            ("polygon", 4, "dual-polygon", 5, "compose_right", ("polygon", 6)),
            ("polygon", 4, "dual-polygon", 5, "tensor", ("polygon", 8)),
        ]
        for xf, xo, yf, yo, mode, expect in cases:
            assert stack_arithmetic(xf, xo, yf, yo, mode) == expect

    def test_signature_table_on_synthetic_shapes(self):
        # Partial composition / tensor product leg arithmetic matches the
        # announced output family signature, with no solution claims.
        from polysimplex.tensor import partial_compose_left, partial_compose_right

        shape_cases = [
            ("polygon", 5, "polygon", 5, "compose_left"),
            ("dual-polygon", 5, "dual-polygon", 7, "compose_right"),
            ("dual-polygon", 4, "polygon", 5, "compose_left"),
            ("polygon", 4, "dual-polygon", 5, "compose_right"),
            ("polygon", 5, "polygon", 6, "tensor"),
            ("polygon", 4, "dual-polygon", 6, "tensor"),
        ]
        for xf, xo, yf, yo, mode in shape_cases:
            x = seeded_tensor(xo, 2, *polygon_signature(xo, xf == "dual-polygon"))
            y = seeded_tensor(yo + 7, 2, *polygon_signature(yo, yf == "dual-polygon"))
            family, order = stack_arithmetic(xf, xo, yf, yo, mode)
            if mode == "compose_left":
                result = partial_compose_left(x, y)
            elif mode == "compose_right":
                result = partial_compose_right(x, y)
            else:
                result = tensor_product(x, y)
            want = polygon_signature(order, family == "dual-polygon")
            assert (result.in_legs, result.out_legs) == want

    def test_commutation_gate(self):
        # (x, y) -> (x, x+y+1) solves the pentagon but does not commute
        # with T, so stacking must refuse it.
        shifted = SolutionDescriptor(
            "polygon", 5, from_function(2, 2, 2, lambda x: (x[0], (x[0] + x[1] + 1) % 2))
        )
        assert check_polygon(shifted.tensor, 5).holds
        with pytest.raises(PreconditionFailed):
            stack(T2, shifted, "compose_left")

    def test_inadmissible_mode(self):
        with pytest.raises(PreconditionFailed):
            stack(T2, T2, "compose_right")


class TestBialgebraTowers:
    def test_order_three_is_identity(self):
        out = bialgebra_tower(3, H2)
        assert out.tensor == identity_tensor(2, 1)

    def test_order_five_closed_form(self):
        out = bialgebra_tower(5, H2)
        assert out.tensor == T2.tensor

    def test_order_six_signature_and_check(self):
        out = bialgebra_tower(6, H2)
        assert (out.tensor.in_legs, out.tensor.out_legs) == (2, 3)
        assert check_polygon(out.tensor, 6).holds

    def test_dual_towers(self):
        for n in (3, 4, 5, 6, 7):
            out = bialgebra_tower(n, H2, dual=True)
            assert check_polygon(out.tensor, n, dual=True).holds

    def test_towers_over_z3(self):
        for n in (5, 6, 7):
            assert verify_descriptor(bialgebra_tower(n, H3)).holds

    def test_noncommutative_group_rejected(self):
        with pytest.raises(PreconditionFailed):
            bialgebra_tower(5, group_algebra(symmetric_group(3)))


class TestMultiBialgebraTower:
    def test_single_factor_reduces_to_plain_tower(self):
        out = multi_bialgebra_tower(2, [H2])
        assert out.tensor == bialgebra_tower(5, H2).tensor

    def test_two_factors_pentagon_at_dim_four(self):
        out = multi_bialgebra_tower(2, [H2, H2])
        assert out.tensor.dim == 4
        assert check_polygon(out.tensor, 5).holds

    def test_hat_coproduct_is_unit_insertion(self):
        from polysimplex.construct import _hat_structure

        cop, _ = _hat_structure([H2, H2], 1)
        # basis x (x) y maps to (x (x) 1) (x) (1 (x) y); digit packing is
        # (x, y) -> 2x + y with the unit at digit 0
        for x, y in product(range(2), repeat=2):
            assert cop.entry((2 * x + 0, 0 + y), (2 * x + y,)) == 1
        assert len(cop.entries) == 4

    def test_too_few_factors_rejected(self):
        with pytest.raises(PreconditionFailed):
            multi_bialgebra_tower(3, [H2])


class TestHigherMixedPair:
    def test_k1_returns_inputs(self):
        t, s = higher_mixed_pair(1, T2.tensor, S2.tensor)
        assert t.tensor == T2.tensor and s.tensor == S2.tensor

    def test_k2_seven_gon_pair(self):
        t7, s7 = higher_mixed_pair(2, T2.tensor, S2.tensor)
        assert t7.order == 7
        assert check_mixed(t7.tensor, s7.tensor, 7).holds

    def test_k3_shapes_only(self):
        t9, s9 = higher_mixed_pair(3, T2.tensor, S2.tensor, verify=False)
        assert (t9.tensor.in_legs, t9.tensor.out_legs) == (4, 4)
        assert (s9.tensor.in_legs, s9.tensor.out_legs) == (4, 4)

    def test_relation_gate(self):
        with pytest.raises(PreconditionFailed):
            higher_mixed_pair(2, T3.tensor, T3.tensor)


class TestAntipodeMixedPair:
    def test_k1_identity_pair(self):
        t, s = hopf_mixed_pair_antipode(1, H2)
        assert t.tensor == identity_tensor(2, 1)
        assert s.tensor == identity_tensor(2, 1)

    def test_k2_over_z2(self):
        t, s = hopf_mixed_pair_antipode(2, H2)
        assert check_mixed(t.tensor, s.tensor, 5).holds

    def test_k2_over_z3(self):
        t, s = hopf_mixed_pair_antipode(2, H3)
        assert t.tensor.dim == 3
        assert check_mixed(t.tensor, s.tensor, 5).holds

    def test_requires_hopf(self):
        stripped = group_algebra(cyclic_group(2))
        from polysimplex.hopf import HopfInstance

        no_antipode = HopfInstance(
            stripped.dim,
            stripped.unit,
            stripped.counit,
            stripped.product,
            stripped.coproduct,
            antipode=None,
        )
        with pytest.raises(PreconditionFailed):
            hopf_mixed_pair_antipode(2, no_antipode)


class TestSimplexFromMixed:
    def test_r4_matches_published_action(self):
        r4 = simplex_from_mixed(T2, S2, drop="one")
        assert r4.order == 4
        # R(x,y,z,w) = (y_(1), x_(1), y_(2) w, z s^-1(x_(2))) over k[Z_2]
        for x, y, z, w in product(range(2), repeat=4):
            expect = (y, x, (y + w) % 2, (z - x) % 2)
            assert r4.tensor.entry(expect, (x, y, z, w)) == 1

    def test_r3_matches_published_action(self):
        r3 = simplex_from_mixed(T2, S2, drop="two")
        assert r3.order == 3
        # R(x,y,z) = (x_(1), z s^-1(x_(3)), x_(2) y) over k[Z_2]
        for x, y, z in product(range(2), repeat=3):
            expect = (x, (z - x) % 2, (x + y) % 2)
            assert r3.tensor.entry(expect, (x, y, z)) == 1

    def test_r3_is_left_trace_of_r4(self):
        r4 = simplex_from_mixed(T2, S2, drop="one")
        r3 = simplex_from_mixed(T2, S2, drop="two")
        assert r3.tensor == partial_trace_left(r4.tensor)

    def test_right_trace_variant(self):
        out = simplex_from_mixed(T2, S2, drop="two_right")
        assert out.order == 3
        assert check_simplex(out.tensor, 3).holds
        r4 = simplex_from_mixed(T2, S2, drop="one")
        assert out.tensor == partial_trace_right(r4.tensor)

    def test_trace_identity_holds_for_arbitrary_pairs(self):
        # R^(n-2) = tr_l(R^(n-1)) is a formula-level identity: check it on
        # seeded tensors with no solution property, both parities.
        for n, sig_t, sig_s in ((5, (2, 2), (2, 2)), (4, (1, 2), (2, 1))):
            t = seeded_tensor(n, 2, *sig_t)
            s = seeded_tensor(n + 1, 2, *sig_s)
            big = simplex_map_from_pair_formula(t, s, n)
            small = partial_trace_left(big)
            assert small.shape == (2, n - 2, n - 2)

    def test_mixed_gate(self):
        with pytest.raises(PreconditionFailed):
            simplex_from_mixed(T3, SolutionDescriptor("dual-polygon", 5, T3.tensor), "one")

    def test_pair_swaps_helper(self):
        sw = adjacent_pair_swaps(2, 5, 2, RATIONAL)
        for digits in product(range(2), repeat=5):
            expect = (digits[1], digits[0], digits[3], digits[2], digits[4])
            assert sw.entry(expect, digits) == 1


class TestYangBaxter:
    def test_compose_mode(self):
        out = yang_baxter_from_pair(T2.tensor, S2.tensor, "compose")
        assert out.order == 2
        # S o T (g, h) = (g, g h g^-1) which is (g, h) for abelian G
        assert out.tensor == identity_tensor(2, 2)
        assert check_simplex(out.tensor, 2).holds

    def test_compose_mode_z3(self):
        out = yang_baxter_from_pair(T3.tensor, S3.tensor, "compose")
        assert check_simplex(out.tensor, 2).holds

    def test_four_factor_mode(self):
        out = yang_baxter_from_pair(T2.tensor, S2.tensor, "four_factor")
        assert out.tensor.dim == 4
        assert (out.tensor.in_legs, out.tensor.out_legs) == (2, 2)
        assert check_simplex(out.tensor, 2).holds

    def test_identity_pair(self):
        one = identity_tensor(2, 2)
        out = yang_baxter_from_pair(one, one, "compose")
        assert out.tensor == one

    def test_non_pair_rejected(self):
        from polysimplex.tensor import flip

        with pytest.raises(PreconditionFailed):
            yang_baxter_from_pair(flip(2), S2.tensor, "compose")


class TestDescriptorPlumbing:
    def test_json_round_trip(self):
        data = T2.to_json_dict()
        back = SolutionDescriptor.from_json_dict(data)
        assert back.tensor == T2.tensor and back.family == "polygon"

    def test_signature_validation(self):
        with pytest.raises(ShapeError):
            SolutionDescriptor("polygon", 5, identity_tensor(2, 3))

    def test_provenance_accumulates(self):
        out = trace_descend(bialgebra_tower(7, H2))
        assert any("tower" in note for note in out.provenance)
        assert any("trace" in note for note in out.provenance)
