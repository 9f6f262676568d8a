"""Statistics: rational coefficient vectors over the poset elements.

A statistic evaluates additively on ideals (0/1 indicators) and tropical
arrays, or multiplicatively on birational arrays, where the coefficients
act as integer exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LabeledArray, as_fraction
from .poset import FILES, Poset


class StatisticError(ValueError):
    """Statistic incompatible with the requested evaluation mode."""


@dataclass(frozen=True)
class Statistic:
    name: str
    poset: Poset
    coefficients: tuple[Fraction, ...]  # canonical element order

    def coefficient(self, x) -> Fraction:
        return self.coefficients[self.poset.index[x]]

    def support(self) -> tuple:
        return tuple(
            x for x, c in zip(self.poset.elements, self.coefficients) if c != 0
        )


def custom(P: Poset, mapping, name: str = "custom") -> Statistic:
    coeffs = tuple(as_fraction(mapping.get(x, 0)) for x in P.elements)
    return Statistic(name, P, coeffs)


def cardinality(P: Poset) -> Statistic:
    """All-ones coefficients: |I| combinatorially, sum/product of values."""
    return Statistic("cardinality", P, (Fraction(1),) * len(P.elements))


def file_count(P: Poset, i: int) -> Statistic:
    """Indicator of file i: |I intersect file i| and its lifts."""
    cls = P.classes(FILES).classes[i - 1]
    return custom(P, {x: 1 for x in cls}, name=f"file({i})")


def element_indicator(P: Poset, x) -> Statistic:
    P._require_element(x)
    return custom(P, {x: 1}, name=f"element({P.element_key(x)})")


def opposite_pair(P: Poset, x) -> Statistic:
    """Indicator of the set {x, opposite(x)} (a singleton at the center)."""
    pair = {x, P.opposite(x)}
    name = "+".join(sorted(P.element_key(y) for y in pair))
    return custom(P, {y: 1 for y in pair}, name=f"pair({name})")


def eval_combinatorial(stat: Statistic, ideal: int) -> Fraction:
    P = stat.poset
    return sum(
        (c for k, c in enumerate(stat.coefficients) if ideal >> k & 1), Fraction(0)
    )


def eval_additive(stat: Statistic, f: LabeledArray) -> Fraction:
    return sum(
        (c * v for c, v in zip(stat.coefficients, f.values) if c != 0), Fraction(0)
    )


def eval_multiplicative(stat: Statistic, f: LabeledArray) -> Fraction:
    out = Fraction(1)
    for c, v in zip(stat.coefficients, f.values):
        if c == 0:
            continue
        if c.denominator != 1:
            raise StatisticError(
                f"birational evaluation needs integer exponents, got {c}"
            )
        out *= v ** int(c)
    return out


def eval_stat(stat: Statistic, state, setting: str) -> Fraction:
    """Evaluate on an ideal mask (combinatorial) or labeled array."""
    if setting == "combinatorial":
        return eval_combinatorial(stat, state)
    if setting in ("pl-unit", "pl-homog", "tropical"):
        return eval_additive(stat, state)
    if setting == "birational":
        return eval_multiplicative(stat, state)
    raise ValueError(f"unknown setting {setting!r}")
