"""Rowmotion and promotion dynamics on [a] x [b] in exact rational arithmetic.

Three settings share one toggle formula over a five-operation algebra:
combinatorial toggles on order ideals, piecewise-linear (tropical) toggles
on the order polytope, and birational toggles on positive rational arrays.
The lab submodule verifies the homomesy theorems, invariants, and
structural identities exactly, at desk scale.
"""

from .algebra import BIRATIONAL, TROPICAL, LabeledArray, SingularInputError, ToggleAlgebra
from .poset import BOTTOM, TOP, Poset, PosetError, general_poset, rect, toggle_order

__version__ = "0.1.0"

__all__ = [
    "BIRATIONAL",
    "BOTTOM",
    "LabeledArray",
    "Poset",
    "PosetError",
    "SingularInputError",
    "TOP",
    "ToggleAlgebra",
    "TROPICAL",
    "__version__",
    "general_poset",
    "rect",
    "toggle_order",
]
