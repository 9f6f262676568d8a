"""Generic toggle dynamics over a toggle algebra.

Each toggle replaces the value at one element x by div(mul(L, R), f(x)),
where L is the series-fold of the values at the lower covers of x in the
augmented poset (the virtual bottom contributes the array's bottom value)
and R is the parallel-fold over the upper covers (the virtual top
contributes the top value).  Instantiated tropically this is the
piecewise-linear fiber toggle L + R - f(x); birationally it is L*R/f(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LabeledArray, SingularInputError, ToggleAlgebra
from .poset import FILES, NEGATIVE_FIBERS, RANKS, Poset, PosetError, toggle_order


def _toggle_in_place(A: ToggleAlgebra, P: Poset, vals: list, bottom, top, x):
    i = P.index[x]
    down = P.down[x]
    up = P.up[x]
    try:
        L = A.ser_fold([vals[P.index[y]] for y in down]) if down else bottom
        R = A.par_fold([vals[P.index[y]] for y in up]) if up else top
        vals[i] = A.div(A.mul(L, R), vals[i])
    except SingularInputError as err:
        err.element = x
        raise


def toggle(A: ToggleAlgebra, f: LabeledArray, x) -> LabeledArray:
    """Toggle f at a single element; an exact involution."""
    f.poset._require_element(x)
    vals = list(f.values)
    _toggle_in_place(A, f.poset, vals, f.bottom, f.top, x)
    return f.with_values(vals)


def apply_plan(A: ToggleAlgebra, f: LabeledArray, plan) -> LabeledArray:
    """Toggle along a plan (preset name or element sequence), first to last."""
    P = f.poset
    vals = list(f.values)
    for x in toggle_order(P, plan):
        _toggle_in_place(A, P, vals, f.bottom, f.top, x)
    return f.with_values(vals)


def rowmotion(A: ToggleAlgebra, f: LabeledArray) -> LabeledArray:
    return apply_plan(A, f, "rowmotion")


def promotion(A: ToggleAlgebra, f: LabeledArray) -> LabeledArray:
    return apply_plan(A, f, "promotion")


def promotion_inverse(A: ToggleAlgebra, f: LabeledArray) -> LabeledArray:
    return apply_plan(A, f, "promotion-inverse")


def step_by_recurrence(A: ToggleAlgebra, f: LabeledArray, kind: str) -> LabeledArray:
    """Rowmotion/promotion computed by the direct recurrence.

    The new value at x is div(mul(L, R), f(x)) where neighbors in classes
    already processed (higher ranks for rowmotion, files to the left for
    promotion) contribute their new values and all others their old ones.
    This is an independent cross-check of apply_plan with the matching
    preset and agrees with it exactly.
    """
    P = f.poset
    if kind == "rowmotion":
        classes = tuple(reversed(P.classes(RANKS).classes))
    elif kind == "promotion":
        classes = P.classes(FILES).classes
    else:
        raise PosetError(f"unknown recurrence kind {kind!r}")
    old = list(f.values)
    new = list(f.values)
    done = set()
    for cls in classes:
        for x in cls:
            i = P.index[x]
            down = [
                new[P.index[y]] if y in done else old[P.index[y]] for y in P.down[x]
            ]
            up = [new[P.index[y]] if y in done else old[P.index[y]] for y in P.up[x]]
            try:
                L = A.ser_fold(down) if down else f.bottom
                R = A.par_fold(up) if up else f.top
                new[i] = A.div(A.mul(L, R), old[i])
            except SingularInputError as err:
                err.element = x
                raise
        done.update(cls)
    return f.with_values(new)


def edge_invariant(A: ToggleAlgebra, f: LabeledArray) -> Fraction:
    """ser-fold of div(f(x), f(y)) over all covers x <. y of the augmented poset.

    Preserved by every single toggle, hence by rowmotion and promotion.
    Birationally this is the sum of f(x)/f(y) over the edges; tropically it
    is the maximum edge difference (the negated minimal gap).
    """
    P = f.poset
    terms = []
    for x, y in P.hat_cover_pairs():
        fx = f.bottom if x not in P.index else f[x]
        fy = f.top if y not in P.index else f[y]
        terms.append(A.div(fx, fy))
    return A.ser_fold(terms)


@dataclass(frozen=True)
class QuotientSequence:
    """Per-file aggregates p_1..p_{n-1} and their quotients q_1..q_n.

    With p_0 = p_n = unit, q_i = div(p_i, p_{i-1}); the mul-fold of all
    q_i telescopes to the unit.
    """

    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    def shifted_left(self) -> "QuotientSequence":
        return QuotientSequence(self.p, self.q[1:] + self.q[:1])

    def swapped(self, i: int) -> "QuotientSequence":
        """q with entries i and i+1 (1-based) exchanged."""
        q = list(self.q)
        q[i - 1], q[i] = q[i], q[i - 1]
        return QuotientSequence(self.p, tuple(q))


def quotient_sequence(A: ToggleAlgebra, f: LabeledArray) -> QuotientSequence:
    """File aggregates of f and the associated length-n quotient sequence."""
    P = f.poset
    P._require_rect()
    files = P.classes(FILES).classes
    p = [A.mul_fold([f[x] for x in cls]) for cls in files]
    padded = [A.unit] + p + [A.unit]
    q = tuple(A.div(padded[i], padded[i - 1]) for i in range(1, len(padded)))
    return QuotientSequence(tuple(p), q)


def file_toggle(A: ToggleAlgebra, f: LabeledArray, i: int) -> LabeledArray:
    """Toggle every element of file i (the toggles commute)."""
    P = f.poset
    P._require_rect()
    if not 1 <= i <= P.n - 1:
        raise PosetError(f"file index {i} out of range 1..{P.n - 1}")
    return apply_plan(A, f, P.classes(FILES).classes[i - 1])


def recombine(A: ToggleAlgebra, f: LabeledArray, direction: str = "forward") -> LabeledArray:
    """Recombination: splice negative fiber j from the (j-1)-th rowmotion iterate.

    Forward: (Df)(i,j) = (rho^(j-1) f)(i,j).  Inverse: (D^-1 g)(i,j) =
    (pi^(-(j-1)) g)(i,j).  Forward then inverse is the identity wherever
    the intermediate steps are defined, and D conjugates rowmotion to
    promotion.
    """
    P = f.poset
    P._require_rect()
    fibers = P.classes(NEGATIVE_FIBERS).classes
    vals = list(f.values)
    if direction == "forward":
        iterate = f
        for j in range(2, P.b + 1):
            iterate = rowmotion(A, iterate)
            for x in fibers[j - 1]:
                vals[P.index[x]] = iterate[x]
    elif direction == "inverse":
        iterate = f
        for j in range(2, P.b + 1):
            iterate = promotion_inverse(A, iterate)
            for x in fibers[j - 1]:
                vals[P.index[x]] = iterate[x]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return f.with_values(vals)


def _integer_nth_root(k: int, n: int):
    """Exact n-th root of a nonnegative integer, or None."""
    if k == 0:
        return 0
    lo, hi = 1, 1 << ((k.bit_length() + n - 1) // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**n
        if p == k:
            return mid
        if p < k:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_nth_root(v: Fraction, n: int):
    """Exact rational n-th root of a positive rational, or None."""
    if v <= 0:
        return None
    num = _integer_nth_root(v.numerator, n)
    den = _integer_nth_root(v.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def homogenize(A: ToggleAlgebra, f: LabeledArray) -> LabeledArray:
    """Change of variables onto the homogeneous profile (boundaries = unit).

    Element (i,j) sits at height m = i+j-1 of the augmented poset, whose
    total height is n = a+b.  Tropically the correction at height m is
    bottom + (m/n)(top - bottom); birationally it is alpha^(n-m) omega^m
    with alpha, omega the n-th roots of the boundary values.  The map
    conjugates toggles on the original profile to homogeneous toggles.
    """
    P = f.poset
    P._require_rect()
    n = P.n
    if A.name == "tropical":
        def correction(m):
            return f.bottom + Fraction(m, n) * (f.top - f.bottom)
    else:
        alpha = rational_nth_root(f.bottom, n)
        omega = rational_nth_root(f.top, n)
        if alpha is None or omega is None:
            raise ValueError(
                "birational homogenization needs boundary values with "
                f"rational {n}-th roots, got bottom={f.bottom}, top={f.top}"
            )

        def correction(m):
            return alpha ** (n - m) * omega**m

    vals = [
        A.div(f[x], correction(x[0] + x[1] - 1)) for x in P.elements
    ]
    return LabeledArray(P, tuple(vals), A.unit, A.unit)
