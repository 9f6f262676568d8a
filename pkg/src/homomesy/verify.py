"""Verification suites for the named theorems, lemmas, and invariants.

Each suite runs exact checks on one rectangle [a] x [b] and returns a
report listing every orbit or sample value it examined.  The CLI `verify`
command and the acceptance tests both drive these functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import dynamics, ideals, lab, polytopes, sampling, statistics
from .algebra import BIRATIONAL, TROPICAL, LabeledArray
from .poset import FILES, rect


@dataclass(frozen=True)
class CheckResult:
    label: str
    passed: bool
    details: dict

    def to_dict(self) -> dict:
        return {"label": self.label, "passed": self.passed, "details": self.details}


@dataclass(frozen=True)
class VerifyReport:
    theorem: str
    params: dict
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def rows(self) -> list[dict]:
        out = []
        for k, c in enumerate(self.checks):
            out.append(
                {
                    "orbit_id": k,
                    "step": "",
                    "statistic": c.label,
                    "value": "pass" if c.passed else "fail",
                }
            )
        return out


def _report(theorem, params, checks) -> VerifyReport:
    return VerifyReport(theorem, params, tuple(checks))


def _strs(values) -> list[str]:
    return [str(v) for v in values]


# -- combinatorial theorems ------------------------------------------------------


def verify_thm_card(a: int, b: int, **_) -> VerifyReport:
    """Every rowmotion and promotion orbit mean of |I| equals ab/2."""
    P = rect(a, b)
    target = Fraction(a * b, 2)
    checks = []
    for plan in ("rowmotion", "promotion"):
        rep = lab.check_homomesy_exhaustive(P, plan, statistics.cardinality(P))
        checks.append(
            CheckResult(
                f"{plan} cardinality mean {target}",
                rep.homomesic and rep.constant == target,
                {"orbit_means": _strs(rep.values), "orbit_lengths": list(rep.orbit_lengths)},
            )
        )
    return _report("thm-card", {"a": a, "b": b}, checks)


def refined_file_constant(a: int, b: int, i: int) -> Fraction:
    """Promotion mean of |I intersect file i|, with files indexed j-i+a.

    bi/n for i <= a and a(n-i)/n for i > a.  Beware the mirror image of
    this assignment (ai/n for i <= b), which belongs to the reversed file
    indexing i -> n-i and fails under this one; see the regression test.
    Verified exhaustively for all a, b <= 5.
    """
    n = a + b
    return Fraction(b * i, n) if i <= a else Fraction(a * (n - i), n)


def verify_refined_files(a: int, b: int, **_) -> VerifyReport:
    """Promotion means of the per-file ideal counts match the refined constants."""
    P = rect(a, b)
    n = a + b
    checks = []
    for i in range(1, n):
        target = refined_file_constant(a, b, i)
        rep = lab.check_homomesy_exhaustive(P, "promotion", statistics.file_count(P, i))
        checks.append(
            CheckResult(
                f"file {i} mean {target}",
                rep.homomesic and rep.constant == target,
                {"orbit_means": _strs(rep.values)},
            )
        )
    return _report("refined-files", {"a": a, "b": b}, checks)


def verify_opposite_pairs(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Opposite-pair statistics: homomesic combinatorially under both maps;
    birational full-period products equal 1 at every sample."""
    P = rect(a, b)
    checks = []
    seen = set()
    pairs = []
    for x in P.elements:
        key = frozenset({x, P.opposite(x)})
        if key not in seen:
            seen.add(key)
            pairs.append(x)
    for plan in ("rowmotion", "promotion"):
        for x in pairs:
            stat = statistics.opposite_pair(P, x)
            rep = lab.check_homomesy_exhaustive(P, plan, stat)
            checks.append(
                CheckResult(
                    f"{plan} {stat.name} homomesic (constant {rep.constant})",
                    rep.homomesic,
                    {"orbit_means": _strs(rep.values)},
                )
            )
    for plan in ("rowmotion", "promotion"):
        for x in pairs:
            stat = statistics.opposite_pair(P, x)
            rep = lab.check_homomesy_sampled(P, plan, stat, "birational", samples, seed)
            checks.append(
                CheckResult(
                    f"birational {plan} {stat.name} full-period product 1",
                    rep.homomesic and rep.constant == 1,
                    {"sample_products": _strs(rep.values)},
                )
            )
    return _report("opposite-pairs", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


# -- sampled piecewise-linear and birational theorems --------------------------------


def verify_thm_sum(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """One-period promotion mean of the coordinate sum is ab/2 on O(P)."""
    P = rect(a, b)
    target = Fraction(a * b, 2)
    rep = lab.check_homomesy_sampled(
        P, "promotion", statistics.cardinality(P), "pl-unit", samples, seed
    )
    checks = [
        CheckResult(
            f"pl-unit promotion mean {target}",
            rep.homomesic and rep.constant == target,
            {"sample_means": _strs(rep.values)},
        )
    ]
    return _report("thm-sum", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_thm_sumh(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Homogeneous promotion: the n-step sum of coordinate sums is 0."""
    P = rect(a, b)
    rep = lab.check_homomesy_sampled(
        P, "promotion", statistics.cardinality(P), "pl-homog", samples, seed
    )
    checks = [
        CheckResult(
            "pl-homog promotion mean 0",
            rep.homomesic and rep.constant == 0,
            {"sample_means": _strs(rep.values)},
        )
    ]
    return _report("thm-sumh", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_thm_prod(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Birational promotion: full-period products of |v| and of every file
    aggregate equal 1.  One orbit pass per sample covers all the statistics."""
    P = rect(a, b)
    n = a + b
    files = P.classes(FILES).classes
    step = lab.array_step(BIRATIONAL, P, "promotion")
    totals = []
    file_products = []
    for s in range(samples):
        f = sampling.positive_array(P, seed, s)
        total = Fraction(1)
        per_file = [Fraction(1)] * (n - 1)
        cur = f
        for _ in range(n):
            for i, cls in enumerate(files):
                for x in cls:
                    per_file[i] *= cur[x]
            cur = step(cur)
        for p in per_file:
            total *= p
        totals.append(total)
        file_products.append(per_file)
    checks = [
        CheckResult(
            "full-period product of |v| is 1",
            all(t == 1 for t in totals),
            {"sample_products": _strs(totals)},
        )
    ]
    for i in range(n - 1):
        values = [fp[i] for fp in file_products]
        checks.append(
            CheckResult(
                f"full-period product of file {i + 1} aggregate is 1",
                all(v == 1 for v in values),
                {"sample_products": _strs(values)},
            )
        )
    return _report("thm-prod", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_order_n(
    a: int, b: int, samples: int = 20, seed: int = 0, setting: str = "birational", **_
) -> VerifyReport:
    """rho^(a+b) and pi^(a+b) are the identity in the requested setting."""
    P = rect(a, b)
    n = a + b
    checks = []
    if setting == "combinatorial":
        states = ideals.all_ideals(P)
        for plan in ("rowmotion", "promotion"):
            step = lab.combinatorial_step(P, plan)
            ok = True
            for state in states:
                cur = state
                for _ in range(n):
                    cur = step(cur)
                if cur != state:
                    ok = False
                    break
            checks.append(
                CheckResult(
                    f"{plan}^{n} fixes all {len(states)} ideals",
                    ok,
                    {"states": len(states)},
                )
            )
    else:
        algebra, _, _ = ((BIRATIONAL, 1, 1) if setting == "birational" else (TROPICAL, 0, 0))
        for plan in ("rowmotion", "promotion"):
            step = lab.array_step(algebra, P, plan)
            failures = []
            for s in range(samples):
                f = sampling.sample_array(P, setting, seed, s)
                cur = f
                for _ in range(n):
                    cur = step(cur)
                if cur != f:
                    failures.append(s)
            checks.append(
                CheckResult(
                    f"{setting} {plan}^{n} = id at {samples} samples",
                    not failures,
                    {"failing_samples": failures},
                )
            )
    return _report(
        "order-n",
        {"a": a, "b": b, "setting": setting, "samples": samples, "seed": seed},
        checks,
    )


def verify_thm_delta(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Recombination conjugates rowmotion to promotion; inverse recovers f."""
    P = rect(a, b)
    equivariant = []
    inverses = []
    for s in range(samples):
        f = sampling.positive_array(P, seed, s)
        lhs = dynamics.recombine(BIRATIONAL, dynamics.rowmotion(BIRATIONAL, f))
        rhs = dynamics.promotion(BIRATIONAL, dynamics.recombine(BIRATIONAL, f))
        equivariant.append(lhs == rhs)
        back = dynamics.recombine(BIRATIONAL, dynamics.recombine(BIRATIONAL, f), "inverse")
        inverses.append(back == f)
    checks = [
        CheckResult(
            f"Delta(rho f) = pi(Delta f) at {samples} samples",
            all(equivariant),
            {"failing_samples": [k for k, ok in enumerate(equivariant) if not ok]},
        ),
        CheckResult(
            f"inverse(Delta f) = f at {samples} samples",
            all(inverses),
            {"failing_samples": [k for k, ok in enumerate(inverses) if not ok]},
        ),
    ]
    return _report("thm-delta", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_thm_alphas(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """alpha1 . alpha3 . alpha2 equals rowmotion, birationally and tropically."""
    P = rect(a, b)
    birational_ok = []
    tropical_ok = []
    for s in range(samples):
        f = sampling.positive_array(P, seed, s)
        _, _, final = polytopes.alpha_chain(BIRATIONAL, f)
        birational_ok.append(final == dynamics.rowmotion(BIRATIONAL, f))
        g = sampling.homogeneous_tropical_array(P, seed, s)
        _, _, final_t = polytopes.alpha_chain(TROPICAL, g)
        tropical_ok.append(final_t == dynamics.rowmotion(TROPICAL, g))
    checks = [
        CheckResult(
            f"birational composition = rho_B at {samples} samples",
            all(birational_ok),
            {"failing_samples": [k for k, ok in enumerate(birational_ok) if not ok]},
        ),
        CheckResult(
            f"tropical homogeneous composition = rho_H at {samples} samples",
            all(tropical_ok),
            {"failing_samples": [k for k, ok in enumerate(tropical_ok) if not ok]},
        ),
    ]
    return _report("thm-alphas", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_lem_swap(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Toggling file i swaps entries i, i+1 of the quotient sequence."""
    P = rect(a, b)
    n = a + b
    checks = []
    for algebra, setting in ((BIRATIONAL, "birational"), (TROPICAL, "pl-homog")):
        failures = []
        for s in range(samples):
            f = sampling.sample_array(P, setting, seed, s)
            q = dynamics.quotient_sequence(algebra, f)
            for i in range(1, n):
                toggled = dynamics.file_toggle(algebra, f, i)
                if dynamics.quotient_sequence(algebra, toggled).q != q.swapped(i).q:
                    failures.append((s, i))
        checks.append(
            CheckResult(
                f"{setting} file toggles act as adjacent swaps on Q",
                not failures,
                {"failures": failures},
            )
        )
    return _report("lem-swap", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_cor_shift(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Promotion shifts the quotient sequence cyclically to the left."""
    P = rect(a, b)
    checks = []
    for algebra, setting in ((BIRATIONAL, "birational"), (TROPICAL, "pl-homog")):
        failures = []
        for s in range(samples):
            f = sampling.sample_array(P, setting, seed, s)
            q = dynamics.quotient_sequence(algebra, f)
            advanced = dynamics.promotion(algebra, f)
            if dynamics.quotient_sequence(algebra, advanced).q != q.shifted_left().q:
                failures.append(s)
        checks.append(
            CheckResult(
                f"{setting} Q(pi f) = leftward shift of Q(f)",
                not failures,
                {"failing_samples": failures},
            )
        )
    return _report("cor-shift", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


def verify_edge_invariant(a: int, b: int, samples: int = 20, seed: int = 0, **_) -> VerifyReport:
    """Every single toggle preserves the edge invariant, in both instances."""
    P = rect(a, b)
    checks = []
    for algebra, setting in ((BIRATIONAL, "birational"), (TROPICAL, "pl-unit")):
        failures = []
        for s in range(samples):
            f = sampling.sample_array(P, setting, seed, s)
            inv = dynamics.edge_invariant(algebra, f)
            for x in P.elements:
                if dynamics.edge_invariant(algebra, dynamics.toggle(algebra, f, x)) != inv:
                    failures.append((s, P.element_key(x)))
        checks.append(
            CheckResult(
                f"{setting} edge invariant preserved by all toggles",
                not failures,
                {"failures": failures},
            )
        )
    if (a, b) == (2, 2):
        f = LabeledArray.from_values(P, [1, 2, 3, 4], 1, 1)
        value = dynamics.edge_invariant(BIRATIONAL, f)
        checks.append(
            CheckResult(
                "running example (1,2,3,4) has invariant 85/12",
                value == Fraction(85, 12),
                {"value": str(value)},
            )
        )
    return _report("edge-invariant", {"a": a, "b": b, "samples": samples, "seed": seed}, checks)


THEOREMS = {
    "thm-card": verify_thm_card,
    "thm-sum": verify_thm_sum,
    "thm-sumh": verify_thm_sumh,
    "thm-prod": verify_thm_prod,
    "thm-delta": verify_thm_delta,
    "thm-alphas": verify_thm_alphas,
    "lem-swap": verify_lem_swap,
    "cor-shift": verify_cor_shift,
    "refined-files": verify_refined_files,
    "order-n": verify_order_n,
    "opposite-pairs": verify_opposite_pairs,
    "edge-invariant": verify_edge_invariant,
}


def run_verify(theorem: str, a: int, b: int, **kwargs) -> VerifyReport:
    if theorem not in THEOREMS:
        known = ", ".join(sorted(THEOREMS))
        raise KeyError(f"unknown theorem id {theorem!r}; known ids: {known}")
    return THEOREMS[theorem](a, b, **kwargs)


def run_all(max_a: int, max_b: int, samples: int = 20, seed: int = 0) -> list[VerifyReport]:
    """Every theorem suite on every rectangle with a <= max_a, b <= max_b."""
    reports = []
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            for theorem in sorted(THEOREMS):
                if theorem == "order-n":
                    for setting in ("combinatorial", "birational"):
                        reports.append(
                            run_verify(theorem, a, b, samples=samples, seed=seed, setting=setting)
                        )
                else:
                    reports.append(run_verify(theorem, a, b, samples=samples, seed=seed))
    return reports
