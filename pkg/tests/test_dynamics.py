from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homomesy import dynamics as dyn
from homomesy.algebra import BIRATIONAL, TROPICAL, LabeledArray, SingularInputError
from homomesy.poset import PosetError, rect
from homomesy.sampling import (
    homogeneous_tropical_array,
    order_polytope_array,
    positive_array,
)

import oracles

W, X, Y, Z = (1, 1), (2, 1), (1, 2), (2, 2)
P22 = rect(2, 2)


def barr(values, bottom=1, top=1, P=P22):
    return LabeledArray.from_values(P, values, bottom, top)


def tarr(values, bottom=0, top=1, P=P22):
    return LabeledArray.from_values(P, values, bottom, top)


F_RUNNING = barr([1, 2, 3, 4])
V_RUNNING = tarr([Fraction(1, 10), Fraction(2, 10), Fraction(3, 10), Fraction(4, 10)])


# -- single toggles ------------------------------------------------------------


def test_birational_toggle_worked_example():
    g = dyn.toggle(BIRATIONAL, F_RUNNING, Z)
    assert g.values == (1, 2, 3, Fraction(5, 4))


def test_toggle_only_changes_one_coordinate():
    g = dyn.toggle(BIRATIONAL, F_RUNNING, Y)
    assert [a == b for a, b in zip(g.values, F_RUNNING.values)] == [
        True,
        True,
        False,
        True,
    ]


def test_toggle_involution_both_instances():
    for algebra, f in ((BIRATIONAL, F_RUNNING), (TROPICAL, V_RUNNING)):
        for x in P22.elements:
            assert dyn.toggle(algebra, dyn.toggle(algebra, f, x), x) == f


def test_toggle_matches_set_oracles():
    for a, b in [(2, 2), (3, 3), (2, 4)]:
        P = rect(a, b)
        f = positive_array(P, seed=11, index=0)
        vals = f.value_map()
        for x in P.elements:
            expected = oracles.birational_toggle(a, b, vals, x)
            got = dyn.toggle(BIRATIONAL, f, x)
            assert got.value_map() == expected
        g = order_polytope_array(P, seed=11, index=0)
        gvals = g.value_map()
        for x in P.elements:
            expected = oracles.pl_toggle(a, b, gvals, x)
            got = dyn.toggle(TROPICAL, g, x)
            assert got.value_map() == expected


def test_commutation_iff_no_cover():
    P = rect(3, 3)
    f = positive_array(P, seed=3, index=1)
    for x in P.elements:
        for y in P.elements:
            if x == y:
                continue
            xy = dyn.toggle(BIRATIONAL, dyn.toggle(BIRATIONAL, f, x), y)
            yx = dyn.toggle(BIRATIONAL, dyn.toggle(BIRATIONAL, f, y), x)
            covers = y in P.up[x] or y in P.down[x]
            if covers:
                assert xy != yx  # generic arrays separate non-commuting toggles
            else:
                assert xy == yx


def test_singular_toggle_names_element():
    f = LabeledArray.from_values(P22, [1, 2, -2, 4], 1, 1)
    with pytest.raises(SingularInputError) as err:
        dyn.toggle(BIRATIONAL, f, W)  # parallel sum of 2 and -2 vanishes
    assert err.value.element == W
    g = LabeledArray.from_values(P22, [1, 0, 3, 4], 1, 1)
    with pytest.raises(SingularInputError):
        dyn.toggle(BIRATIONAL, g, X)


# -- plans -----------------------------------------------------------------------


def test_rowmotion_worked_examples():
    assert dyn.rowmotion(BIRATIONAL, F_RUNNING).values == (
        Fraction(1, 4),
        Fraction(5, 8),
        Fraction(5, 12),
        Fraction(5, 4),
    )
    assert dyn.rowmotion(TROPICAL, V_RUNNING).values == (
        Fraction(6, 10),
        Fraction(8, 10),
        Fraction(7, 10),
        Fraction(9, 10),
    )


def test_birational_rowmotion_period_4():
    cur = F_RUNNING
    for _ in range(4):
        cur = dyn.rowmotion(BIRATIONAL, cur)
    assert cur == F_RUNNING


def test_homogeneous_single_element_toggle():
    P = rect(1, 1)
    f = LabeledArray.homogeneous(P, [Fraction(7, 3)], TROPICAL)
    assert dyn.apply_plan(TROPICAL, f, "promotion").values == (Fraction(-7, 3),)


def test_plan_matches_oracle_composition():
    for a, b in [(2, 3), (3, 3)]:
        P = rect(a, b)
        f = positive_array(P, seed=5, index=2)
        vals = f.value_map()
        for x in oracles.rank_order_top_down(a, b):
            vals = oracles.birational_toggle(a, b, vals, x)
        assert dyn.rowmotion(BIRATIONAL, f).value_map() == vals
        vals = f.value_map()
        for x in oracles.file_order_left_right(a, b):
            vals = oracles.birational_toggle(a, b, vals, x)
        assert dyn.promotion(BIRATIONAL, f).value_map() == vals


def test_inverse_plans():
    f = positive_array(rect(3, 2), seed=9, index=0)
    assert dyn.apply_plan(
        BIRATIONAL, dyn.promotion(BIRATIONAL, f), "promotion-inverse"
    ) == f
    assert dyn.apply_plan(
        BIRATIONAL, dyn.rowmotion(BIRATIONAL, f), "rowmotion-inverse"
    ) == f


# -- recurrence ---------------------------------------------------------------------


def test_recurrence_worked_examples():
    assert dyn.step_by_recurrence(BIRATIONAL, F_RUNNING, "rowmotion").values == (
        Fraction(1, 4),
        Fraction(5, 8),
        Fraction(5, 12),
        Fraction(5, 4),
    )
    assert dyn.step_by_recurrence(TROPICAL, V_RUNNING, "rowmotion").values == (
        Fraction(6, 10),
        Fraction(8, 10),
        Fraction(7, 10),
        Fraction(9, 10),
    )


def test_recurrence_equals_plan_at_samples():
    for a, b in [(2, 2), (3, 3), (4, 3)]:
        P = rect(a, b)
        for s in range(20):
            f = positive_array(P, seed=21, index=s)
            for kind in ("rowmotion", "promotion"):
                assert dyn.step_by_recurrence(BIRATIONAL, f, kind) == dyn.apply_plan(
                    BIRATIONAL, f, kind
                )
            g = order_polytope_array(P, seed=21, index=s)
            for kind in ("rowmotion", "promotion"):
                assert dyn.step_by_recurrence(TROPICAL, g, kind) == dyn.apply_plan(
                    TROPICAL, g, kind
                )


def test_recurrence_rejects_unknown_kind():
    with pytest.raises(PosetError):
        dyn.step_by_recurrence(BIRATIONAL, F_RUNNING, "diagonal")


def test_recurrence_equals_plan_on_general_boundary_profiles():
    P = rect(3, 2)
    f = LabeledArray.from_values(P, [1, 2, 3, 4, 5, 6], 2, 3)
    for kind in ("rowmotion", "promotion"):
        assert dyn.step_by_recurrence(BIRATIONAL, f, kind) == dyn.apply_plan(
            BIRATIONAL, f, kind
        )
    g = LabeledArray.from_values(
        P,
        [Fraction(1, 3), Fraction(1, 2), 1, 2, 3, 4],
        Fraction(1, 3),
        Fraction(5, 7),
    )
    for kind in ("rowmotion", "promotion"):
        assert dyn.step_by_recurrence(TROPICAL, g, kind) == dyn.apply_plan(
            TROPICAL, g, kind
        )


def test_dynamics_on_general_graded_poset():
    from homomesy.poset import general_poset

    # the diamond as a general poset: rank-based rowmotion works,
    # file-based operations refuse
    P = general_poset(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )
    f = LabeledArray.from_values(P, [1, 2, 3, 4], 1, 1, )
    out = dyn.rowmotion(BIRATIONAL, f)
    assert out.values == (
        Fraction(1, 4),
        Fraction(5, 8),
        Fraction(5, 12),
        Fraction(5, 4),
    )
    for x in P.elements:
        assert dyn.toggle(BIRATIONAL, dyn.toggle(BIRATIONAL, f, x), x) == f
    with pytest.raises(PosetError):
        dyn.quotient_sequence(BIRATIONAL, f)
    with pytest.raises(PosetError):
        dyn.apply_plan(BIRATIONAL, f, "promotion")


# -- edge invariant --------------------------------------------------------------------


def test_edge_invariant_values():
    assert dyn.edge_invariant(BIRATIONAL, F_RUNNING) == Fraction(85, 12)
    ones = barr([1, 1, 1, 1])
    assert dyn.edge_invariant(BIRATIONAL, ones) == 6  # six P-hat edges
    assert dyn.edge_invariant(TROPICAL, V_RUNNING) == Fraction(-1, 10)


def test_edge_invariant_preserved_by_toggles():
    for a, b in [(2, 2), (3, 2), (3, 3)]:
        P = rect(a, b)
        f = positive_array(P, seed=2, index=4)
        inv = dyn.edge_invariant(BIRATIONAL, f)
        g = order_polytope_array(P, seed=2, index=4)
        inv_t = dyn.edge_invariant(TROPICAL, g)
        for x in P.elements:
            assert dyn.edge_invariant(BIRATIONAL, dyn.toggle(BIRATIONAL, f, x)) == inv
            assert dyn.edge_invariant(TROPICAL, dyn.toggle(TROPICAL, g, x)) == inv_t


# -- quotient sequences ------------------------------------------------------------------


def test_quotient_sequence_examples():
    qs = dyn.quotient_sequence(BIRATIONAL, F_RUNNING)
    assert qs.p == (2, 4, 3)
    assert qs.q == (2, 2, Fraction(3, 4), Fraction(1, 3))
    ones = barr([1, 1, 1, 1])
    assert dyn.quotient_sequence(BIRATIONAL, ones).q == (1, 1, 1, 1)
    trop = LabeledArray.homogeneous(P22, [0, 1, 1, 0], TROPICAL)
    tq = dyn.quotient_sequence(TROPICAL, trop)
    assert tq.p == (1, 0, 1)
    assert tq.q == (1, -1, 1, -1)


def test_quotient_sequence_telescopes_to_unit():
    for a, b in [(2, 2), (3, 4)]:
        P = rect(a, b)
        f = positive_array(P, seed=6, index=0)
        assert BIRATIONAL.mul_fold(dyn.quotient_sequence(BIRATIONAL, f).q) == 1
        g = homogeneous_tropical_array(P, seed=6, index=0)
        assert TROPICAL.mul_fold(dyn.quotient_sequence(TROPICAL, g).q) == 0


def test_file_toggle_swaps_quotients():
    qs = dyn.quotient_sequence(BIRATIONAL, F_RUNNING)
    t3 = dyn.file_toggle(BIRATIONAL, F_RUNNING, 3)
    assert dyn.quotient_sequence(BIRATIONAL, t3).q == qs.swapped(3).q
    assert qs.swapped(3).q == (2, 2, Fraction(1, 3), Fraction(3, 4))
    t1 = dyn.file_toggle(BIRATIONAL, F_RUNNING, 1)
    assert dyn.quotient_sequence(BIRATIONAL, t1).q == qs.swapped(1).q
    with pytest.raises(PosetError):
        dyn.file_toggle(BIRATIONAL, F_RUNNING, 4)


def test_promotion_is_left_to_right_file_toggles():
    for a, b in [(2, 2), (3, 3)]:
        P = rect(a, b)
        for s in range(5):
            f = positive_array(P, seed=8, index=s)
            cur = f
            for i in range(1, a + b):
                cur = dyn.file_toggle(BIRATIONAL, cur, i)
            assert cur == dyn.promotion(BIRATIONAL, f)


def test_promotion_shifts_quotient_sequence():
    for a, b in [(2, 2), (3, 2), (3, 3)]:
        P = rect(a, b)
        f = positive_array(P, seed=12, index=1)
        qs = dyn.quotient_sequence(BIRATIONAL, f)
        shifted = dyn.quotient_sequence(BIRATIONAL, dyn.promotion(BIRATIONAL, f))
        assert shifted.q == qs.shifted_left().q


def test_file_toggles_fail_braid_relation():
    # (phi*_1 phi*_2)^3 does not fix (.3,.4,.5,.7): no S_n action on arrays
    v = tarr([Fraction(3, 10), Fraction(4, 10), Fraction(5, 10), Fraction(7, 10)])
    cur = v
    for _ in range(3):
        cur = dyn.file_toggle(TROPICAL, cur, 2)
        cur = dyn.file_toggle(TROPICAL, cur, 1)
    assert cur != v


# -- recombination ---------------------------------------------------------------------


def test_recombine_worked_example():
    df = dyn.recombine(BIRATIONAL, F_RUNNING)
    assert df.values == (1, 2, Fraction(5, 12), Fraction(5, 4))


def test_recombine_single_fiber_is_identity():
    P = rect(3, 1)
    f = positive_array(P, seed=4, index=0)
    assert dyn.recombine(BIRATIONAL, f) == f


def test_recombine_equivariance_and_inverse():
    for a, b in [(2, 2), (3, 3), (2, 4)]:
        P = rect(a, b)
        for s in range(10):
            f = positive_array(P, seed=31, index=s)
            lhs = dyn.recombine(BIRATIONAL, dyn.rowmotion(BIRATIONAL, f))
            rhs = dyn.promotion(BIRATIONAL, dyn.recombine(BIRATIONAL, f))
            assert lhs == rhs
            assert dyn.recombine(
                BIRATIONAL, dyn.recombine(BIRATIONAL, f), "inverse"
            ) == f


def test_recombine_tropical_instance():
    P = rect(3, 2)
    f = homogeneous_tropical_array(P, seed=31, index=5)
    lhs = dyn.recombine(TROPICAL, dyn.rowmotion(TROPICAL, f))
    rhs = dyn.promotion(TROPICAL, dyn.recombine(TROPICAL, f))
    assert lhs == rhs


# -- homogenization -----------------------------------------------------------------------


def test_homogenize_worked_example():
    h = dyn.homogenize(TROPICAL, V_RUNNING)
    assert h.values == (
        Fraction(-3, 20),
        Fraction(-3, 10),
        Fraction(-1, 5),
        Fraction(-7, 20),
    )
    assert h.bottom == 0 and h.top == 0


def test_homogenize_fixes_homogeneous_input():
    f = LabeledArray.homogeneous(P22, [1, -2, 3, 0], TROPICAL)
    assert dyn.homogenize(TROPICAL, f) == f
    g = LabeledArray.homogeneous(P22, [1, 2, 3, 4], BIRATIONAL)
    assert dyn.homogenize(BIRATIONAL, g) == g


def test_homogenize_conjugates_promotion():
    for a, b in [(2, 2), (3, 3)]:
        P = rect(a, b)
        for s in range(10):
            f = order_polytope_array(P, seed=41, index=s)
            lhs = dyn.homogenize(TROPICAL, dyn.promotion(TROPICAL, f))
            rhs = dyn.promotion(TROPICAL, dyn.homogenize(TROPICAL, f))
            assert lhs == rhs
            lhs = dyn.homogenize(TROPICAL, dyn.rowmotion(TROPICAL, f))
            rhs = dyn.rowmotion(TROPICAL, dyn.homogenize(TROPICAL, f))
            assert lhs == rhs


def test_homogenize_birational_with_nth_power_boundaries():
    P = rect(2, 2)
    f = LabeledArray.from_values(P, [1, 2, 3, 4], 16, 81)  # 2^4 and 3^4
    h = dyn.homogenize(BIRATIONAL, f)
    assert h.bottom == 1 and h.top == 1
    # conjugation with the original boundary profile
    lhs = dyn.homogenize(BIRATIONAL, dyn.promotion(BIRATIONAL, f))
    rhs = dyn.promotion(BIRATIONAL, h)
    assert lhs == rhs


def test_homogenize_birational_rejects_irrational_roots():
    f = LabeledArray.from_values(P22, [1, 2, 3, 4], 2, 1)
    with pytest.raises(ValueError):
        dyn.homogenize(BIRATIONAL, f)


def test_homogenize_general_tropical_profile():
    P = rect(2, 3)
    f = LabeledArray.from_values(
        P,
        [Fraction(k, 7) for k in range(1, 7)],
        Fraction(1, 2),
        Fraction(3, 4),
    )
    h = dyn.homogenize(TROPICAL, f)
    assert h.bottom == 0 and h.top == 0
    assert dyn.homogenize(TROPICAL, dyn.promotion(TROPICAL, f)) == dyn.promotion(
        TROPICAL, h
    )


def test_rational_nth_root():
    assert dyn.rational_nth_root(Fraction(16, 81), 4) == Fraction(2, 3)
    assert dyn.rational_nth_root(Fraction(1), 7) == 1
    assert dyn.rational_nth_root(Fraction(2), 2) is None
    assert dyn.rational_nth_root(Fraction(-8), 3) is None


# -- property tests ------------------------------------------------------------------------


@given(
    values=st.lists(
        st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9),
        min_size=4,
        max_size=4,
    )
)
@settings(max_examples=50)
def test_toggle_involution_property(values):
    f = LabeledArray.from_values(P22, values, 1, 1)
    for x in P22.elements:
        assert dyn.toggle(BIRATIONAL, dyn.toggle(BIRATIONAL, f, x), x) == f


@given(
    values=st.lists(
        st.fractions(min_value=-9, max_value=9, max_denominator=9),
        min_size=4,
        max_size=4,
    )
)
@settings(max_examples=50)
def test_tropical_toggle_involution_property(values):
    f = LabeledArray.homogeneous(P22, values, TROPICAL)
    for x in P22.elements:
        assert dyn.toggle(TROPICAL, dyn.toggle(TROPICAL, f, x), x) == f
