"""Homomesy laboratory: orbit averages, span computation, and experiments.

All verdicts use exact equality of rationals; there are no tolerances.
Sampled checks quantify over a seeded, reproducible sample set, and a
single failing sample is a failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import dynamics, ideals, linalg, polytopes, sampling, statistics
from .algebra import BIRATIONAL, TROPICAL, LabeledArray, profile_for_setting
from .poset import Poset, PosetError, toggle_order

COMBINATORIAL = "combinatorial"


def plan_name(P: Poset, plan) -> str:
    if isinstance(plan, str):
        return plan
    return "plan:" + ",".join(P.element_key(x).replace(",", ".") for x in plan)


def default_orbit_bound(P: Poset, plan) -> int:
    """4(a+b) for rectangles; arbitrary plans share the default."""
    size = P.n if P.is_rect else len(P.elements) + 1
    return 4 * size


# -- orbit detection -----------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    """States visited from the start, with the detected exact period.

    period is None when no state repeated within the step bound
    (aperiodic-within-bound); preperiod is nonzero only for
    non-invertible maps.
    """

    states: tuple
    period: int | None
    preperiod: int = 0

    @property
    def periodic(self) -> bool:
        return self.period is not None


def orbit_of(step, start, max_steps: int) -> OrbitReport:
    """Iterate `step`, detecting the first exact revisit of a full state."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    states = [start]
    seen = {start: 0}
    cur = start
    for k in range(1, max_steps + 1):
        cur = step(cur)
        if cur in seen:
            first = seen[cur]
            return OrbitReport(tuple(states), period=k - first, preperiod=first)
        seen[cur] = k
        states.append(cur)
    return OrbitReport(tuple(states), period=None)


def combinatorial_step(P: Poset, plan):
    order = toggle_order(P, plan)

    def step(ideal: int) -> int:
        for x in order:
            ideal = ideals.toggle(P, ideal, x)
        return ideal

    return step


def array_step(algebra, P: Poset, plan):
    order = toggle_order(P, plan)

    def step(f: LabeledArray) -> LabeledArray:
        return dynamics.apply_plan(algebra, f, order)

    return step


def orbit_values(P: Poset, plan, start, setting: str, max_steps: int | None = None) -> OrbitReport:
    """Orbit of a start state under a plan in the given setting."""
    if max_steps is None:
        max_steps = default_orbit_bound(P, plan)
    if setting == COMBINATORIAL:
        return orbit_of(combinatorial_step(P, plan), start, max_steps)
    algebra, _, _ = profile_for_setting(setting)
    return orbit_of(array_step(algebra, P, plan), start, max_steps)


# -- homomesy reports ------------------------------------------------------------


@dataclass(frozen=True)
class HomomesyReport:
    statistic: str
    map_name: str
    setting: str
    values: tuple[Fraction, ...]  # per-orbit means or per-sample aggregates
    verdict: str  # "homomesic" | "not-homomesic"
    constant: Fraction | None
    witness: tuple[int, int] | None  # indices of two differing entries
    orbit_lengths: tuple[int, ...] | None = None
    seed: int | None = None
    samples: int | None = None
    resampled: int = 0

    @property
    def homomesic(self) -> bool:
        return self.verdict == "homomesic"

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "map": self.map_name,
            "setting": self.setting,
            "values": [str(v) for v in self.values],
            "verdict": self.verdict,
            "constant": None if self.constant is None else str(self.constant),
            "witness": None if self.witness is None else list(self.witness),
            "orbit_lengths": None
            if self.orbit_lengths is None
            else list(self.orbit_lengths),
            "seed": self.seed,
            "samples": self.samples,
            "resampled": self.resampled,
        }

    def rows(self) -> list[dict]:
        key = "orbit_id" if self.orbit_lengths is not None else "sample_id"
        return [
            {key: k, "step": "", "statistic": self.statistic, "value": str(v)}
            for k, v in enumerate(self.values)
        ]


def _verdict(values):
    if not values:
        return "homomesic", None, None
    first = values[0]
    for k, v in enumerate(values):
        if v != first:
            return "not-homomesic", None, (0, k)
    return "homomesic", first, None


def check_homomesy_exhaustive(
    P: Poset, plan, stat: statistics.Statistic, max_states: int = ideals.DEFAULT_STATE_GUARD
) -> HomomesyReport:
    """Exact per-orbit means of a statistic over all of J(P)."""
    partition = ideals.orbit_partition(P, plan, max_states)
    means = tuple(
        Fraction(
            sum(statistics.eval_combinatorial(stat, state) for state in orbit),
            len(orbit),
        )
        for orbit in partition.orbits
    )
    verdict, constant, witness = _verdict(means)
    return HomomesyReport(
        statistic=stat.name,
        map_name=plan_name(P, plan),
        setting=COMBINATORIAL,
        values=means,
        verdict=verdict,
        constant=constant,
        witness=witness,
        orbit_lengths=partition.lengths,
    )


def check_homomesy_sampled(
    P: Poset,
    plan,
    stat: statistics.Statistic,
    setting: str,
    samples: int,
    seed: int,
) -> HomomesyReport:
    """Full-period aggregates at seeded samples: means (tropical settings)
    or products (birational), over one period of n = a+b steps."""
    algebra, _, _ = profile_for_setting(setting)
    n = P.n if P.is_rect else len(P.elements)
    step = array_step(algebra, P, plan)
    values = []
    resampled = 0
    index = 0
    produced = 0
    while produced < samples:
        f = sampling.sample_array(P, setting, seed, index)
        index += 1
        try:
            if algebra is BIRATIONAL:
                total = Fraction(1)
                cur = f
                for _ in range(n):
                    total *= statistics.eval_multiplicative(stat, cur)
                    cur = step(cur)
            else:
                acc = Fraction(0)
                cur = f
                for _ in range(n):
                    acc += statistics.eval_additive(stat, cur)
                    cur = step(cur)
                total = acc / n
        except dynamics.SingularInputError:
            resampled += 1
            continue
        values.append(total)
        produced += 1
    verdict, constant, witness = _verdict(values)
    return HomomesyReport(
        statistic=stat.name,
        map_name=plan_name(P, plan),
        setting=setting,
        values=tuple(values),
        verdict=verdict,
        constant=constant,
        witness=witness,
        seed=seed,
        samples=samples,
        resampled=resampled,
    )


# -- homomesic span ----------------------------------------------------------------


@dataclass(frozen=True)
class SpanReport:
    dimension: int
    basis: tuple[tuple[Fraction, ...], ...]
    predicted_dimension: int | None
    comparison: str  # "equal" | "predicted-subspace-strict" | "incomparable" | "n/a"
    map_name: str = ""

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "basis": [[str(c) for c in vec] for vec in self.basis],
            "predicted_dimension": self.predicted_dimension,
            "comparison": self.comparison,
            "map": self.map_name,
        }

    def rows(self) -> list[dict]:
        return [
            {
                "orbit_id": k,
                "step": "",
                "statistic": "basis-vector",
                "value": " ".join(str(c) for c in vec),
            }
            for k, vec in enumerate(self.basis)
        ]


def predicted_span_rows(P: Poset) -> list[tuple[Fraction, ...]]:
    """Coefficient vectors of the file statistics and opposite-pair statistics."""
    P._require_rect()
    rows = []
    for i in range(1, P.n):
        rows.append(statistics.file_count(P, i).coefficients)
    seen = set()
    for x in P.elements:
        pair = frozenset({x, P.opposite(x)})
        if pair in seen:
            continue
        seen.add(pair)
        rows.append(statistics.opposite_pair(P, x).coefficients)
    return rows


def homomesy_span(
    P: Poset, plan, max_states: int = ideals.DEFAULT_STATE_GUARD
) -> SpanReport:
    """Exact span of the homomesic functionals among element indicators.

    Builds the matrix of per-orbit averages of the indicators 1_x and
    returns the rational nullspace of the differences to the first orbit.
    """
    partition = ideals.orbit_partition(P, plan, max_states)
    m = len(P.elements)
    averages = []
    for orbit in partition.orbits:
        counts = [0] * m
        for state in orbit:
            for k in range(m):
                if state >> k & 1:
                    counts[k] += 1
        averages.append([Fraction(c, len(orbit)) for c in counts])
    diff_rows = [
        [a - b for a, b in zip(averages[k], averages[0])]
        for k in range(1, len(averages))
    ]
    basis = tuple(linalg.nullspace(diff_rows, ncols=m))
    if P.is_rect:
        predicted = predicted_span_rows(P)
        predicted_dim = linalg.rank(predicted)
        if linalg.spans_equal(basis, predicted):
            comparison = "equal"
        elif linalg.span_contains(basis, predicted):
            comparison = "predicted-subspace-strict"
        else:
            comparison = "incomparable"
    else:
        predicted_dim = None
        comparison = "n/a"
    return SpanReport(
        dimension=len(basis),
        basis=basis,
        predicted_dimension=predicted_dim,
        comparison=comparison,
        map_name=plan_name(P, plan),
    )


# -- the infinite-order experiment (the 2x2 four-toggle plan) ------------------------


def resolved_infinite_order_plan(P: Poset) -> tuple:
    """The 4-toggle order that reproduces the reference 12-step table.

    In application order it toggles (1,1), (2,1), (2,2), (1,2); reading
    the composition right to left this is phi_y . phi_z . phi_x . phi_w.
    """
    if not (P.is_rect and P.a == 2 and P.b == 2):
        raise PosetError("the infinite-order experiment runs on the 2x2 rectangle")
    return ((1, 1), (2, 1), (2, 2), (1, 2))


def reference_twelve_step_table(d: int, k: int) -> tuple[tuple[Fraction, ...], ...]:
    """The twelve intermediate states that carry (1,k,k,k)/d to (1,k-2,k-2,k-2)/d."""
    rows = [
        (k - 1, k - 1, d - 1, d),
        (0, d - k + 1, 0, d - 1),
        (0, k - 2, k - 1, k - 1),
        (k - 2, k - 1, d - 1, d),
        (1, d - k + 2, 1, d - 1),
        (0, k - 3, k - 3, k - 2),
        (k - 3, k - 2, d, d),
        (1, d - k + 3, 1, d),
        (0, k - 3, k - 4, k - 3),
        (k - 4, k - 4, d - 1, d - 1),
        (0, d - k + 3, 1, d),
        (1, k - 2, k - 2, k - 2),
    ]
    return tuple(tuple(Fraction(v, d) for v in row) for row in rows)


@dataclass(frozen=True)
class InfiniteOrderReport:
    d: int
    k: int
    states: tuple[tuple[Fraction, ...], ...]
    matches_reference: bool
    reaches_previous: bool  # final state is v_{k-2}

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "states": [[str(v) for v in s] for s in self.states],
            "matches_reference": self.matches_reference,
            "reaches_previous": self.reaches_previous,
        }


def infinite_order_experiment(P: Poset, plan, d: int, k: int) -> InfiniteOrderReport:
    """Run twelve steps of the 2x2 plan from v_k = (1,k,k,k)/d."""
    if not 4 <= k <= d:
        raise ValueError("the table requires 4 <= k <= d")
    start = LabeledArray.unit_interval(P, [Fraction(v, d) for v in (1, k, k, k)])
    step = array_step(TROPICAL, P, plan)
    states = []
    cur = start
    for _ in range(12):
        cur = step(cur)
        states.append(cur.values)
    reference = reference_twelve_step_table(d, k)
    v_prev = tuple(Fraction(v, d) for v in (1, k - 2, k - 2, k - 2))
    return InfiniteOrderReport(
        d=d,
        k=k,
        states=tuple(states),
        matches_reference=tuple(states) == reference,
        reaches_previous=states[-1] == v_prev,
    )


@dataclass(frozen=True)
class CesaroReport:
    statistic: str
    period: int | None
    steps: int
    average: Fraction
    running: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "period": self.period,
            "steps": self.steps,
            "average": str(self.average),
            "running": [str(v) for v in self.running],
        }


def cesaro_average(
    P: Poset,
    plan,
    start: LabeledArray,
    stat: statistics.Statistic,
    horizon: int = 10**5,
    checkpoints: int = 10,
) -> CesaroReport:
    """Running Cesaro average of a statistic along a tropical trajectory.

    If the orbit closes within the horizon the exact orbit mean is
    reported; otherwise the running average at the horizon (truncated, no
    convergence claim).
    """
    step = array_step(TROPICAL, P, plan)
    total = Fraction(0)
    running = []
    seen = {start: 0}
    cur = start
    steps = 0
    period = None
    mark = max(1, horizon // checkpoints)
    for k in range(1, horizon + 1):
        total += statistics.eval_additive(stat, cur)
        if k % mark == 0:
            running.append(total / k)
        cur = step(cur)
        steps = k
        if cur in seen:
            period = k - seen[cur]
            break
        seen[cur] = k
    average = total / steps
    return CesaroReport(
        statistic=stat.name,
        period=period,
        steps=steps,
        average=average,
        running=tuple(running),
    )


# -- the antichain experiment ---------------------------------------------------------


def antichain_experiment(
    P: Poset, mode: str, samples: int = 50, seed: int = 0,
    max_states: int = ideals.DEFAULT_STATE_GUARD,
) -> HomomesyReport:
    """Antichain-cardinality homomesy experiment in three modes.

    combinatorial: per-orbit means of |A| under the antichain map on A(P).
    pl: per-sample one-period means of the all-ones statistic under the
    transfer-conjugated dynamics on the chain polytope.  birational: the
    detropicalized analogue with per-sample one-period products.  Findings
    are reported; no constant is asserted.
    """
    P._require_rect()
    if mode == COMBINATORIAL:
        states = ideals.all_antichains(P, max_states)
        seen = set()
        means = []
        lengths = []
        for start in states:
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            cur = ideals.antichain_rowmotion(P, start)
            while cur != start:
                orbit.append(cur)
                seen.add(cur)
                cur = ideals.antichain_rowmotion(P, cur)
            lengths.append(len(orbit))
            means.append(
                Fraction(sum(bin(state).count("1") for state in orbit), len(orbit))
            )
        verdict, constant, witness = _verdict(means)
        return HomomesyReport(
            statistic="antichain-cardinality",
            map_name="antichain-rowmotion",
            setting=COMBINATORIAL,
            values=tuple(means),
            verdict=verdict,
            constant=constant,
            witness=witness,
            orbit_lengths=tuple(lengths),
        )
    if mode not in ("pl", "birational"):
        raise ValueError(f"unknown antichain experiment mode {mode!r}")
    n = P.n
    bound = 4 * n
    values = []
    resampled = 0
    index = 0
    while len(values) < samples:
        index += 1
        try:
            if mode == "pl":
                f = sampling.order_polytope_array(P, seed, index)
                g = polytopes.transfer_phi(f)
                report = orbit_of(polytopes.chain_dynamics, g, bound)
                if not report.periodic:
                    raise ValueError("chain dynamics orbit exceeded its bound")
                acc = sum(
                    (sum(state.values, Fraction(0)) for state in report.states),
                    Fraction(0),
                )
                values.append(acc / report.period)
            else:
                f = sampling.positive_array(P, seed, index)
                g = polytopes.transfer_phi_generic(BIRATIONAL, f)
                report = orbit_of(
                    lambda h: polytopes.chain_dynamics_birational(BIRATIONAL, h),
                    g,
                    bound,
                )
                if not report.periodic:
                    raise ValueError("chain dynamics orbit exceeded its bound")
                prod = Fraction(1)
                for state in report.states:
                    for v in state.values:
                        prod *= v
                values.append(prod)
        except dynamics.SingularInputError:
            resampled += 1
            continue
    verdict, constant, witness = _verdict(values)
    return HomomesyReport(
        statistic="antichain-cardinality",
        map_name="chain-dynamics",
        setting=mode,
        values=tuple(values),
        verdict=verdict,
        constant=constant,
        witness=witness,
        seed=seed,
        samples=samples,
        resampled=resampled,
    )
