import math

import pytest

from homomesy import ideals
from homomesy.ideals import (
    SizeGuardError,
    SubsetKindError,
    all_antichains,
    all_ideals,
    alpha1,
    alpha2,
    alpha3,
    apply_plan,
    full_mask,
    ideal_to_list,
    is_antichain,
    is_filter,
    is_ideal,
    mask_of,
    members,
    orbit_partition,
    rowmotion,
    toggle,
)
from homomesy.poset import rect

import oracles

W, X, Y, Z = (1, 1), (2, 1), (1, 2), (2, 2)


def as_sets(P, masks):
    return {frozenset(members(P, m)) for m in masks}


def test_all_ideals_2x2_matches_brute_force():
    P = rect(2, 2)
    expected = {
        frozenset(),
        frozenset({W}),
        frozenset({W, X}),
        frozenset({W, Y}),
        frozenset({W, X, Y}),
        frozenset({W, X, Y, Z}),
    }
    assert as_sets(P, all_ideals(P)) == expected
    assert as_sets(P, all_ideals(P)) == set(oracles.brute_ideals(2, 2))


def test_all_ideals_counts():
    assert len(all_ideals(rect(1, 1))) == 2
    assert len(all_ideals(rect(3, 3))) == 20
    for a, b in [(1, 4), (2, 3), (3, 4)]:
        assert len(all_ideals(rect(a, b))) == math.comb(a + b, a)
        assert as_sets(rect(a, b), all_ideals(rect(a, b))) == set(
            oracles.brute_ideals(a, b)
        )


def test_all_ideals_are_distinct_and_downward_closed():
    P = rect(3, 4)
    out = all_ideals(P)
    assert len(out) == len(set(out))
    assert all(is_ideal(P, m) for m in out)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        all_ideals(rect(4, 4), max_states=10)


def test_all_ideals_general_poset_out_of_order():
    from homomesy.poset import general_poset

    # a 3-chain listed top-first still enumerates its 4 ideals correctly
    Q = general_poset(["t", "m", "b"], [("b", "m"), ("m", "t")])
    found = as_sets(Q, all_ideals(Q))
    assert found == {
        frozenset(),
        frozenset({"b"}),
        frozenset({"b", "m"}),
        frozenset({"b", "m", "t"}),
    }


def test_toggle_worked_example():
    P = rect(2, 2)
    I = mask_of(P, [W, X])
    assert members(P, toggle(P, I, Y)) == (W, X, Y)
    assert toggle(P, I, Z) == I  # y missing blocks z
    # empty ideal: toggling a non-minimal element does nothing
    assert toggle(P, 0, Z) == 0
    assert toggle(P, 0, X) == 0


def test_toggle_matches_set_oracle_exhaustively():
    for a, b in [(2, 2), (2, 3), (3, 3)]:
        P = rect(a, b)
        for I in all_ideals(P):
            fs = frozenset(members(P, I))
            for x in P.elements:
                got = frozenset(members(P, toggle(P, I, x)))
                assert got == oracles.set_toggle(a, b, fs, x)


def test_toggle_involution_and_commutation():
    for a, b in [(a, b) for a in range(1, 4) for b in range(1, 4)]:
        P = rect(a, b)
        for I in all_ideals(P):
            for x in P.elements:
                assert toggle(P, toggle(P, I, x), x) == I
            for x in P.elements:
                for y in P.elements:
                    if x == y:
                        continue
                    covers = y in P.up[x] or y in P.down[x]
                    xy = toggle(P, toggle(P, I, x), y)
                    yx = toggle(P, toggle(P, I, y), x)
                    if not covers:
                        assert xy == yx


def test_rowmotion_worked_examples():
    P = rect(2, 2)
    assert members(P, rowmotion(P, mask_of(P, [W, X]))) == (W, Y)
    assert rowmotion(P, full_mask(P)) == 0
    assert members(P, rowmotion(P, 0)) == (W,)


def test_alphas_worked_example():
    P = rect(2, 2)
    I = mask_of(P, [W, X])
    F = alpha1(P, I)
    assert members(P, F) == (Y, Z)
    A = alpha2(P, F)
    assert members(P, A) == (Y,)
    J = alpha3(P, A)
    assert members(P, J) == (W, Y)


def test_alphas_boundary_and_kind_errors():
    P = rect(2, 2)
    assert alpha1(P, 0) == full_mask(P)
    assert members(P, alpha2(P, full_mask(P))) == (W,)
    assert members(P, alpha3(P, mask_of(P, [W]))) == (W,)
    assert members(P, alpha2(P, mask_of(P, [X, Y, Z]))) == (X, Y)
    with pytest.raises(SubsetKindError):
        alpha1(P, mask_of(P, [X]))  # not an ideal
    with pytest.raises(SubsetKindError):
        alpha2(P, mask_of(P, [W]))  # not a filter
    with pytest.raises(SubsetKindError):
        alpha3(P, mask_of(P, [W, X]))  # not an antichain


def test_alpha_composition_equals_rowmotion_plan():
    for a, b in [(a, b) for a in range(1, 6) for b in range(1, 6)]:
        P = rect(a, b)
        for I in all_ideals(P):
            assert alpha3(P, alpha2(P, alpha1(P, I))) == rowmotion(P, I)


def test_rowmotion_matches_independent_alpha_oracle():
    for a, b in [(2, 2), (3, 2), (3, 3)]:
        P = rect(a, b)
        for I in all_ideals(P):
            got = frozenset(members(P, rowmotion(P, I)))
            assert got == oracles.rowmotion_via_alphas(a, b, frozenset(members(P, I)))


def test_kind_predicates():
    P = rect(2, 2)
    assert is_ideal(P, mask_of(P, [W, X]))
    assert not is_ideal(P, mask_of(P, [X]))
    assert is_filter(P, mask_of(P, [Y, Z]))
    assert not is_filter(P, mask_of(P, [W]))
    assert is_antichain(P, mask_of(P, [X, Y]))
    assert not is_antichain(P, mask_of(P, [W, Z]))


def test_orbit_partition_2x2():
    P = rect(2, 2)
    part = orbit_partition(P, "rowmotion")
    assert sorted(part.lengths) == [2, 4]
    assert part.order == 4
    # orbits partition the state space and wrap around
    assert sorted(s for o in part.orbits for s in o) == sorted(all_ideals(P))
    for orbit in part.orbits:
        assert apply_plan(P, orbit[-1], "rowmotion") == orbit[0]
        for prev, nxt in zip(orbit, orbit[1:]):
            assert apply_plan(P, prev, "rowmotion") == nxt


def test_orbit_partition_chain_and_promotion():
    for b in (1, 2, 3, 4):
        part = orbit_partition(rect(1, b), "rowmotion")
        assert part.lengths == (b + 1,)
    assert orbit_partition(rect(3, 3), "promotion").order == 6


def test_cycle_type_rowmotion_equals_promotion():
    for a in range(1, 5):
        for b in range(1, 5):
            P = rect(a, b)
            rho = sorted(orbit_partition(P, "rowmotion").lengths)
            pi = sorted(orbit_partition(P, "promotion").lengths)
            assert rho == pi


def test_apply_plan_arbitrary_and_identity_periods():
    P = rect(2, 2)
    I = mask_of(P, [W])
    # toggling each element twice in a row is the identity
    plan = [W, W, X, X, Y, Y, Z, Z]
    assert apply_plan(P, I, plan) == I
    for a, b in [(2, 2), (3, 2), (5, 5)]:
        P = rect(a, b)
        n = a + b
        for plan_name in ("rowmotion", "promotion"):
            for I in all_ideals(P):
                cur = I
                for _ in range(n):
                    cur = apply_plan(P, cur, plan_name)
                assert cur == I


def test_antichains_enumeration():
    P = rect(2, 2)
    # antichains of the diamond: {}, {w}, {x}, {y}, {z}, {x,y}
    assert len(all_antichains(P)) == 6
    assert all(is_antichain(P, A) for A in all_antichains(P))


def test_ideal_to_list():
    P = rect(2, 2)
    assert ideal_to_list(P, mask_of(P, [W, Y])) == [[1, 1], [1, 2]]
