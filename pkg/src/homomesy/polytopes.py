"""Order and chain polytopes, transfer maps, and the alpha factorization.

Points of both polytopes are labeled arrays on the unit-interval profile
(bottom 0, top 1) in the tropical carrier.  The transfer maps and the
three alpha maps are implemented generically over a toggle algebra; their
tropical instances are Stanley's maps, and the birational instances are
the subtraction-free lifts used by the rowmotion factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import TROPICAL, LabeledArray, ToggleAlgebra
from .dynamics import rowmotion
from .ideals import SubsetKindError, full_mask, is_antichain, is_filter, mask_of, members
from .poset import Poset

ORDER = "order"
CHAIN = "chain"


@dataclass(frozen=True)
class ConstraintWitness:
    constraint: str
    lhs: Fraction
    rhs: Fraction

    def to_dict(self) -> dict:
        return {"constraint": self.constraint, "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class MembershipResult:
    inside: bool
    witness: ConstraintWitness | None

    def __bool__(self) -> bool:
        return self.inside


class MembershipError(ValueError):
    """A polytope operation was handed a point outside its domain."""

    def __init__(self, which: str, witness: ConstraintWitness):
        super().__init__(f"point is outside the {which} polytope: {witness.constraint}")
        self.witness = witness


def maximal_chains(P: Poset) -> list[tuple]:
    """All maximal chains, enumerated by DFS from the minimal elements.

    For the rectangle these are exactly the monotone lattice paths from
    (1,1) to (a,b).
    """
    out = []

    def walk(x, acc):
        acc.append(x)
        if not P.up[x]:
            out.append(tuple(acc))
        else:
            for y in P.up[x]:
                walk(y, acc)
        acc.pop()

    for x in P.minimals:
        walk(x, [])
    return out


def _label(P: Poset, x) -> str:
    return P.element_key(x) if x in P.index else repr(x)


def in_polytope(f: LabeledArray, which: str) -> MembershipResult:
    """Exact membership test with a violated-constraint witness on failure."""
    P = f.poset
    if which == ORDER:
        for x, y in P.hat_cover_pairs():
            lhs = f.bottom if x not in P.index else f[x]
            rhs = f.top if y not in P.index else f[y]
            if lhs > rhs:
                constraint = f"f({_label(P, x)}) <= f({_label(P, y)})"
                return MembershipResult(False, ConstraintWitness(constraint, lhs, rhs))
        return MembershipResult(True, None)
    if which == CHAIN:
        for x in P.elements:
            if f[x] < 0:
                return MembershipResult(
                    False, ConstraintWitness(f"0 <= f({P.element_key(x)})", Fraction(0), f[x])
                )
        for chain in maximal_chains(P):
            total = sum(f[x] for x in chain)
            if total > 1:
                label = "+".join(f"f({P.element_key(x)})" for x in chain)
                return MembershipResult(False, ConstraintWitness(f"{label} <= 1", total, Fraction(1)))
        return MembershipResult(True, None)
    raise ValueError(f"unknown polytope {which!r}")


def _require_member(f: LabeledArray, which: str):
    result = in_polytope(f, which)
    if not result:
        raise MembershipError(which, result.witness)


# -- vertex correspondences ------------------------------------------------------


def filter_vertex(P: Poset, filt: int) -> LabeledArray:
    """Indicator array of a filter: a vertex of the order polytope."""
    if not is_filter(P, filt):
        raise SubsetKindError("expected a filter mask")
    vals = [Fraction(1) if filt >> k & 1 else Fraction(0) for k in range(len(P.elements))]
    return LabeledArray.unit_interval(P, vals)


def ideal_vertex(P: Poset, ideal: int) -> LabeledArray:
    """Order-polytope vertex of an ideal, via its complementary filter."""
    return filter_vertex(P, full_mask(P) & ~ideal)


def antichain_vertex(P: Poset, antichain: int) -> LabeledArray:
    """Indicator array of an antichain: a vertex of the chain polytope."""
    if not is_antichain(P, antichain):
        raise SubsetKindError("expected an antichain mask")
    vals = [Fraction(1) if antichain >> k & 1 else Fraction(0) for k in range(len(P.elements))]
    return LabeledArray.unit_interval(P, vals)


def vertex_filter(f: LabeledArray) -> int:
    """Filter mask of a 0/1 order-polytope vertex."""
    P = f.poset
    if any(v not in (0, 1) for v in f.values):
        raise SubsetKindError("array is not 0/1-valued")
    filt = mask_of(P, (x for x in P.elements if f[x] == 1))
    if not is_filter(P, filt):
        raise SubsetKindError("0/1 array is not the indicator of a filter")
    return filt


def vertex_ideal(f: LabeledArray) -> int:
    return full_mask(f.poset) & ~vertex_filter(f)


def vertex_antichain(f: LabeledArray) -> int:
    """Antichain mask of a 0/1 chain-polytope vertex."""
    P = f.poset
    if any(v not in (0, 1) for v in f.values):
        raise SubsetKindError("array is not 0/1-valued")
    anti = mask_of(P, (x for x in P.elements if f[x] == 1))
    if not is_antichain(P, anti):
        raise SubsetKindError("0/1 array is not the indicator of an antichain")
    return anti


# -- transfer maps -----------------------------------------------------------------


def transfer_phi_generic(A: ToggleAlgebra, f: LabeledArray) -> LabeledArray:
    """(Phi f)(x) = par-fold of div(f(x), f(y)) over lower covers y in P-hat."""
    P = f.poset
    vals = []
    for x in P.elements:
        lower = [f[y] for y in P.down[x]] or [f.bottom]
        vals.append(A.par_fold([A.div(f[x], v) for v in lower]))
    return f.with_values(vals)


def transfer_psi_generic(A: ToggleAlgebra, g: LabeledArray) -> LabeledArray:
    """(Psi g)(x) = mul(g(x), ser-fold of (Psi g) over lower covers in P)."""
    P = g.poset
    out: dict = {}
    for x in P.linear_extension:  # lower covers are computed first
        below = [out[y] for y in P.down[x]]
        out[x] = A.mul(g[x], A.ser_fold(below)) if below else g[x]
    return g.with_values([out[x] for x in P.elements])


def transfer_phi(f: LabeledArray) -> LabeledArray:
    """Stanley's transfer map O(P) -> C(P) (tropical; exact)."""
    _require_member(f, ORDER)
    return transfer_phi_generic(TROPICAL, f)


def transfer_psi(g: LabeledArray) -> LabeledArray:
    """Inverse transfer map C(P) -> O(P): best chain sums from below."""
    _require_member(g, CHAIN)
    return transfer_psi_generic(TROPICAL, g)


# -- alpha factorization -----------------------------------------------------------


def alpha_chain(A: ToggleAlgebra, f: LabeledArray):
    """The three-step factorization of rowmotion.

    Returns (a2 f, a3 a2 f, a1 a3 a2 f) where a2 is the generic transfer
    map (bottom feeds the lower folds), a3 is the recursive upward
    series-accumulation seeded with the unit above the maximal elements,
    and a1 divides the top boundary value by its argument.  The final
    component equals rowmotion of f exactly.
    """
    P = f.poset
    g = transfer_phi_generic(A, f)
    acc: dict = {}
    for x in reversed(P.linear_extension):  # top down: upper covers first
        above = [acc[y] for y in P.up[x]]
        acc[x] = A.mul(g[x], A.ser_fold(above))  # empty fold = unit at maximals
    h = f.with_values([acc[x] for x in P.elements])
    result = f.with_values([A.div(f.top, acc[x]) for x in P.elements])
    return g, h, result


def chain_dynamics(g: LabeledArray) -> LabeledArray:
    """Transfer-conjugated rowmotion on the chain polytope: Phi . rho_P . Psi.

    On antichain vertices this agrees with the combinatorial antichain map
    (downward saturation, complement, minimal elements) transported
    through the vertex correspondences.
    """
    _require_member(g, CHAIN)
    return transfer_phi_generic(TROPICAL, rowmotion(TROPICAL, transfer_psi_generic(TROPICAL, g)))


def chain_dynamics_birational(A: ToggleAlgebra, g: LabeledArray) -> LabeledArray:
    """Detropicalized chain-polytope dynamics (no membership constraint)."""
    return transfer_phi_generic(A, rowmotion(A, transfer_psi_generic(A, g)))
