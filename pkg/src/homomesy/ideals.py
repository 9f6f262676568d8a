"""Order ideals as bitmasks: toggles, rowmotion/promotion, and orbits.

An order ideal (and likewise a filter or antichain) is encoded as an int
bitmask keyed by the poset's canonical element order, which makes toggling,
hashing, and orbit detection O(1) per state.  Conversion helpers translate
between masks and element collections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .poset import Poset, toggle_order

DEFAULT_STATE_GUARD = 10**7


class SizeGuardError(RuntimeError):
    """State-space enumeration would exceed the configured guard."""


class SubsetKindError(ValueError):
    """A subset violates the invariant of its declared kind."""


# -- mask helpers ---------------------------------------------------------------


def mask_of(P: Poset, elems) -> int:
    """Bitmask of a collection of elements."""
    m = 0
    for x in elems:
        P._require_element(x)
        m |= 1 << P.index[x]
    return m


def members(P: Poset, mask: int) -> tuple:
    """Elements of a mask in canonical order."""
    return tuple(x for k, x in enumerate(P.elements) if mask >> k & 1)


def full_mask(P: Poset) -> int:
    return (1 << len(P.elements)) - 1


def is_ideal(P: Poset, mask: int) -> bool:
    return all(P.down_bits[x] & ~mask == 0 for x in members(P, mask))


def is_filter(P: Poset, mask: int) -> bool:
    return all(P.up_bits[x] & ~mask == 0 for x in members(P, mask))


def is_antichain(P: Poset, mask: int) -> bool:
    elems = members(P, mask)
    return all(
        not P.comparable(x, y) for k, x in enumerate(elems) for y in elems[k + 1 :]
    )


# -- enumeration ----------------------------------------------------------------


def all_ideals(P: Poset, max_states: int = DEFAULT_STATE_GUARD) -> list[int]:
    """Every order ideal of P exactly once, in a deterministic order.

    Elements are scanned along a linear extension, each either excluded
    or, when all its lower covers are already present, included.
    """
    n = len(P.elements)
    order = P.linear_extension
    bits = [1 << P.index[x] for x in order]
    down_bits = [P.down_bits[x] for x in order]
    out = []

    def extend(k: int, mask: int):
        if k == n:
            out.append(mask)
            if len(out) > max_states:
                raise SizeGuardError(
                    f"|J(P)| exceeds the guard of {max_states} states"
                )
            return
        extend(k + 1, mask)
        if down_bits[k] & ~mask == 0:
            extend(k + 1, mask | bits[k])

    extend(0, 0)
    return out


def all_antichains(P: Poset, max_states: int = DEFAULT_STATE_GUARD) -> list[int]:
    """Every antichain, as the maximal elements of each order ideal."""
    return [_maximal_elements(P, ideal) for ideal in all_ideals(P, max_states)]


def _maximal_elements(P: Poset, ideal: int) -> int:
    return mask_of(
        P, (x for x in members(P, ideal) if P.up_bits[x] & ideal == 0)
    )


# -- toggles and plans ------------------------------------------------------------


def toggle(P: Poset, ideal: int, x) -> int:
    """Toggle the ideal at x: add/remove x exactly when the result is an ideal."""
    P._require_element(x)
    bit = 1 << P.index[x]
    if ideal & bit:
        if P.up_bits[x] & ideal == 0:
            return ideal & ~bit
    else:
        if P.down_bits[x] & ~ideal == 0:
            return ideal | bit
    return ideal


def apply_plan(P: Poset, ideal: int, plan) -> int:
    """Toggle along a plan (preset name or element sequence), first to last."""
    for x in toggle_order(P, plan):
        ideal = toggle(P, ideal, x)
    return ideal


def rowmotion(P: Poset, ideal: int) -> int:
    return apply_plan(P, ideal, "rowmotion")


def promotion(P: Poset, ideal: int) -> int:
    return apply_plan(P, ideal, "promotion")


# -- the three bijections ----------------------------------------------------------


def alpha1(P: Poset, ideal: int) -> int:
    """Complement: order ideal -> filter."""
    if not is_ideal(P, ideal):
        raise SubsetKindError("alpha1 expects an order ideal")
    return full_mask(P) & ~ideal


def alpha2(P: Poset, filt: int) -> int:
    """Minimal elements: filter -> antichain."""
    if not is_filter(P, filt):
        raise SubsetKindError("alpha2 expects a filter")
    return mask_of(P, (x for x in members(P, filt) if P.down_bits[x] & filt == 0))


def alpha3(P: Poset, antichain: int) -> int:
    """Downward saturation: antichain -> order ideal."""
    if not is_antichain(P, antichain):
        raise SubsetKindError("alpha3 expects an antichain")
    m = 0
    for x in members(P, antichain):
        m |= P.below_mask[x]
    return m


def antichain_rowmotion(P: Poset, antichain: int) -> int:
    """The antichain map alpha2 . alpha1 . alpha3 : A(P) -> A(P)."""
    return alpha2(P, alpha1(P, alpha3(P, antichain)))


# -- orbits ------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of a plan acting on all of J(P), in discovery order.

    Each orbit lists states so that the map sends entry k to entry k+1,
    cyclically.
    """

    orbits: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    @property
    def order(self) -> int:
        """Order of the induced permutation (lcm of orbit lengths)."""
        return math.lcm(*self.lengths)


def orbit_partition(
    P: Poset, plan, max_states: int = DEFAULT_STATE_GUARD
) -> OrbitPartition:
    order = toggle_order(P, plan)
    states = all_ideals(P, max_states)
    seen = set()
    orbits = []
    for start in states:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = start
        while True:
            for x in order:
                cur = toggle(P, cur, x)
            if cur == start:
                break
            orbit.append(cur)
            seen.add(cur)
        orbits.append(tuple(orbit))
    return OrbitPartition(tuple(orbits))


# -- serialization ------------------------------------------------------------------


def ideal_to_list(P: Poset, mask: int) -> list:
    """JSON-ready sorted element list, e.g. [[1, 1], [2, 1]]."""
    return [list(x) if isinstance(x, tuple) else x for x in members(P, mask)]
