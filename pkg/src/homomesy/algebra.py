"""Exact toggle algebras and labeled arrays.

A toggle algebra is a carrier of exact rationals with five operations:
a unit, two addition flavors (series and parallel), a product, and a
quotient.  The tropical instance (0, max, min, +, -) drives the
piecewise-linear dynamics; the birational instance (1, +, parallel sum,
*, /) drives the subtraction-free rational dynamics.  Folds of an empty
collection return the unit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .poset import Poset


class SingularInputError(ArithmeticError):
    """A toggle denominator vanished (division or parallel sum by zero)."""

    def __init__(self, message: str, element=None, step=None):
        super().__init__(message)
        self.element = element
        self.step = step

    def __str__(self) -> str:
        parts = [super().__str__()]
        if self.element is not None:
            parts.append(f"at element {self.element!r}")
        if self.step is not None:
            parts.append(f"during step {self.step}")
        return " ".join(parts)


def _parallel(x: Fraction, y: Fraction) -> Fraction:
    if x + y == 0:
        raise SingularInputError("parallel-sum denominator vanished")
    return x * y / (x + y)


def _divide(x: Fraction, y: Fraction) -> Fraction:
    if y == 0:
        raise SingularInputError("division by zero")
    return x / y


class ToggleAlgebra:
    """Five-operation algebra over exact rationals (see module docstring)."""

    def __init__(self, name, unit, ser, par, mul, div, is_valid):
        self.name = name
        self.unit = unit
        self.ser = ser
        self.par = par
        self.mul = mul
        self.div = div
        self.is_valid = is_valid

    def __repr__(self) -> str:
        return f"ToggleAlgebra({self.name})"

    def ser_fold(self, values) -> Fraction:
        values = list(values)
        if not values:
            return self.unit
        return reduce(self.ser, values)

    def par_fold(self, values) -> Fraction:
        values = list(values)
        if not values:
            return self.unit
        return reduce(self.par, values)

    def mul_fold(self, values) -> Fraction:
        # unit is the identity of mul, so seeding the fold is safe
        return reduce(self.mul, values, self.unit)


TROPICAL = ToggleAlgebra(
    "tropical",
    unit=Fraction(0),
    ser=lambda x, y: max(x, y),
    par=lambda x, y: min(x, y),
    mul=lambda x, y: x + y,
    div=lambda x, y: x - y,
    is_valid=lambda v: True,
)

BIRATIONAL = ToggleAlgebra(
    "birational",
    unit=Fraction(1),
    ser=lambda x, y: x + y,
    par=_parallel,
    mul=lambda x, y: x * y,
    div=_divide,
    is_valid=lambda v: v > 0,
)


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


@dataclass(frozen=True)
class LabeledArray:
    """Exact rational values on the elements of a poset plus boundary values.

    Values are stored in the poset's canonical element order.  The bottom
    and top fields are the values at the virtual 0hat and 1hat elements.
    Arrays are immutable and hashable, which is what orbit detection keys on.
    """

    poset: Poset
    values: tuple[Fraction, ...]
    bottom: Fraction
    top: Fraction

    def __post_init__(self):
        if len(self.values) != len(self.poset.elements):
            raise ValueError(
                f"expected {len(self.poset.elements)} values, got {len(self.values)}"
            )

    def __getitem__(self, x) -> Fraction:
        return self.values[self.poset.index[x]]

    def value_map(self) -> dict:
        return dict(zip(self.poset.elements, self.values))

    def replace_value(self, x, v: Fraction) -> "LabeledArray":
        k = self.poset.index[x]
        vals = self.values[:k] + (v,) + self.values[k + 1 :]
        return LabeledArray(self.poset, vals, self.bottom, self.top)

    def with_values(self, values) -> "LabeledArray":
        return LabeledArray(self.poset, tuple(values), self.bottom, self.top)

    def is_homogeneous(self, algebra: ToggleAlgebra) -> bool:
        return self.bottom == algebra.unit and self.top == algebra.unit

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_values(cls, P: Poset, values, bottom, top) -> "LabeledArray":
        vals = tuple(as_fraction(v) for v in values)
        return cls(P, vals, as_fraction(bottom), as_fraction(top))

    @classmethod
    def from_map(cls, P: Poset, mapping, bottom, top) -> "LabeledArray":
        return cls.from_values(P, (mapping[x] for x in P.elements), bottom, top)

    @classmethod
    def constant(cls, P: Poset, c, bottom, top) -> "LabeledArray":
        return cls.from_values(P, [c] * len(P.elements), bottom, top)

    @classmethod
    def unit_interval(cls, P: Poset, values) -> "LabeledArray":
        """PL profile with boundary values 0 and 1 (order-polytope setting)."""
        return cls.from_values(P, values, 0, 1)

    @classmethod
    def homogeneous(cls, P: Poset, values, algebra: ToggleAlgebra) -> "LabeledArray":
        """Profile with both boundary values equal to the algebra unit."""
        return cls.from_values(P, values, algebra.unit, algebra.unit)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> str:
        data = {
            "bottom": str(self.bottom),
            "top": str(self.top),
            "values": [
                [self.poset.element_key(x), str(v)]
                for x, v in zip(self.poset.elements, self.values)
            ],
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, P: Poset, text: str) -> "LabeledArray":
        data = json.loads(text)
        mapping = {P.parse_element(k): Fraction(v) for k, v in data["values"]}
        return cls.from_map(P, mapping, Fraction(data["bottom"]), Fraction(data["top"]))


def profile_for_setting(setting: str):
    """(algebra, bottom, top) for a named setting."""
    if setting == "birational":
        return BIRATIONAL, Fraction(1), Fraction(1)
    if setting == "pl-unit":
        return TROPICAL, Fraction(0), Fraction(1)
    if setting == "pl-homog":
        return TROPICAL, Fraction(0), Fraction(0)
    raise ValueError(f"unknown setting {setting!r}")
