"""Seeded, reproducible samplers for arrays in the three settings.

Each sample draws from its own RNG stream derived from (seed, index), so
samples are independent of evaluation order.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import LabeledArray
from .poset import Poset

MAX_INT = 50  # numerators/denominators of birational samples lie in 1..50


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def positive_array(P: Poset, seed: int, index: int) -> LabeledArray:
    """Positive rational array on the homogeneous birational profile."""
    rng = sample_rng(seed, index)
    vals = [
        Fraction(rng.randint(1, MAX_INT), rng.randint(1, MAX_INT))
        for _ in P.elements
    ]
    return LabeledArray.from_values(P, vals, 1, 1)


def homogeneous_tropical_array(P: Poset, seed: int, index: int) -> LabeledArray:
    """Unconstrained rational array on the homogeneous tropical profile."""
    rng = sample_rng(seed, index)
    vals = [
        Fraction(rng.randint(-MAX_INT, MAX_INT), rng.randint(1, MAX_INT))
        for _ in P.elements
    ]
    return LabeledArray.from_values(P, vals, 0, 0)


def order_polytope_array(P: Poset, seed: int, index: int, denom: int = MAX_INT) -> LabeledArray:
    """Order-preserving rational array in O(P), strictly inside each fiber.

    Values are drawn element by element along the canonical linear
    extension: each value sits strictly between the maximum of its lower
    covers and 1, which makes the array order-preserving by construction.
    """
    rng = sample_rng(seed, index)
    vals: dict = {}
    for x in P.elements:
        lo = max((vals[y] for y in P.down[x]), default=Fraction(0))
        t = Fraction(rng.randint(1, denom - 1), denom)
        vals[x] = lo + (1 - lo) * t
    return LabeledArray.unit_interval(P, [vals[x] for x in P.elements])


def sample_array(P: Poset, setting: str, seed: int, index: int) -> LabeledArray:
    if setting == "birational":
        return positive_array(P, seed, index)
    if setting == "pl-homog":
        return homogeneous_tropical_array(P, seed, index)
    if setting == "pl-unit":
        return order_polytope_array(P, seed, index)
    raise ValueError(f"unknown setting {setting!r}")
