"""Command-line frontend: orbits, theorem verification, span, trajectories.

Exit codes: 0 success, 1 check failure or singular input, 2 usage error,
3 size guard exceeded.  Reports embed the poset, map, setting, seed, and
library version; identical flags and seed produce byte-identical JSON.

Init vectors and array values are listed in the canonical element order
(j slowest): for [2]x[2] that is w, x, y, z = (1,1), (2,1), (1,2), (2,2).
Plan elements are written i.j and separated by commas, e.g.
plan:1.1,2.1,2.2,1.2; the letters w,x,y,z are accepted on [2]x[2].
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__, ideals, lab, polytopes, statistics, verify
from .algebra import LabeledArray, SingularInputError, profile_for_setting
from .ideals import SizeGuardError
from .poset import Poset, PosetError, rect

SETTINGS = ("combinatorial", "pl-unit", "pl-homog", "birational")
LETTERS_2X2 = {"w": (1, 1), "x": (2, 1), "y": (1, 2), "z": (2, 2)}


class UsageError(ValueError):
    pass


# -- parsing helpers -----------------------------------------------------------


def _parse_poset(args) -> Poset:
    if args.a is None or args.b is None:
        raise UsageError("--a and --b are required")
    if args.a < 1 or args.b < 1:
        raise UsageError(f"--a and --b must be positive, got {args.a}, {args.b}")
    return rect(args.a, args.b)


def _parse_map(P: Poset, token: str):
    if token in ("rowmotion", "promotion", "rowmotion-inverse", "promotion-inverse"):
        return token
    if token.startswith("plan:"):
        elems = []
        for part in token[len("plan:") :].split(","):
            part = part.strip()
            if part in LETTERS_2X2 and P.is_rect and (P.a, P.b) == (2, 2):
                elems.append(LETTERS_2X2[part])
            else:
                try:
                    elems.append(P.parse_element(part))
                except PosetError as err:
                    raise UsageError(str(err)) from None
        return tuple(elems)
    raise UsageError(
        f"unknown map {token!r}; use rowmotion, promotion, or plan:<elements>"
    )


def _parse_fraction(token: str) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational {token!r}") from None


def _parse_init(P: Poset, setting: str, token: str):
    if setting == "combinatorial":
        if token == "empty":
            return 0
        if token == "full":
            return ideals.full_mask(P)
        try:
            elems = [P.parse_element(part) for part in token.split(",") if part.strip()]
        except PosetError as err:
            raise UsageError(str(err)) from None
        mask = ideals.mask_of(P, elems)
        if not ideals.is_ideal(P, mask):
            raise UsageError(f"init {token!r} is not an order ideal")
        return mask
    parts = [p for p in token.split(",") if p.strip()]
    if len(parts) != len(P.elements):
        raise UsageError(
            f"init needs {len(P.elements)} values in canonical order, got {len(parts)}"
        )
    values = [_parse_fraction(p) for p in parts]
    algebra, bottom, top = profile_for_setting(setting)
    if not all(algebra.is_valid(v) for v in values):
        raise UsageError(
            f"init values outside the {algebra.name} carrier "
            "(birational arrays must be strictly positive)"
        )
    return LabeledArray.from_values(P, values, bottom, top)


def _parse_stat(P: Poset, token: str) -> statistics.Statistic:
    if token == "cardinality":
        return statistics.cardinality(P)
    if token.startswith("file:"):
        try:
            i = int(token[len("file:") :])
        except ValueError:
            raise UsageError(f"bad file index in {token!r}") from None
        if not 1 <= i <= P.n - 1:
            raise UsageError(f"file index {i} out of range 1..{P.n - 1}")
        return statistics.file_count(P, i)
    if token.startswith("pair:"):
        x = P.parse_element(token[len("pair:") :])
        return statistics.opposite_pair(P, x)
    if token.startswith("element:"):
        x = P.parse_element(token[len("element:") :])
        return statistics.element_indicator(P, x)
    raise UsageError(f"unknown statistic {token!r}")


# -- output -----------------------------------------------------------------------


def _envelope(args, command: str, results, extra=None) -> dict:
    data = {
        "command": command,
        "version": __version__,
        "poset": {"kind": "rect", "a": args.a, "b": args.b}
        if getattr(args, "a", None)
        else None,
        "map": getattr(args, "map", None),
        "setting": getattr(args, "setting", None),
        "seed": getattr(args, "seed", None),
        "samples": getattr(args, "samples", None),
        "results": results,
    }
    if extra:
        data.update(extra)
    return data


def _emit(args, data: dict, rows: list[dict], text_lines: list[str]):
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        payload = json.dumps(data, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        fieldnames = list(rows[0].keys()) if rows else ["value"]
        writer = csv.DictWriter(buf, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
        payload = buf.getvalue()
    else:
        payload = "\n".join(text_lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _state_repr(P: Poset, state, setting: str) -> str:
    if setting == "combinatorial":
        return json.dumps(ideals.ideal_to_list(P, state))
    return ",".join(str(v) for v in state.values)


# -- commands -----------------------------------------------------------------------


def cmd_orbits(args) -> int:
    P = _parse_poset(args)
    plan = _parse_map(P, args.map)
    if args.setting == "combinatorial":
        partition = ideals.orbit_partition(P, plan, args.max_states)
        rows = []
        lines = [f"orbits of {args.map} on J([{args.a}]x[{args.b}])"]
        orbits_out = []
        for oid, orbit in enumerate(partition.orbits):
            lines.append(f"orbit {oid} (length {len(orbit)}):")
            states = []
            for step, state in enumerate(orbit):
                s = _state_repr(P, state, "combinatorial")
                states.append(ideals.ideal_to_list(P, state))
                rows.append(
                    {"orbit_id": oid, "step": step, "statistic": "state", "value": s}
                )
                lines.append(f"  step {step}: {s}")
            orbits_out.append({"length": len(orbit), "states": states})
        lines.append(
            f"lengths: {list(partition.lengths)}; permutation order {partition.order}"
        )
        results = {
            "orbits": orbits_out,
            "lengths": list(partition.lengths),
            "permutation_order": partition.order,
        }
        _emit(args, _envelope(args, "orbits", results), rows, lines)
        return 0
    if args.init is None:
        raise UsageError(f"--init is required for setting {args.setting}")
    start = _parse_init(P, args.setting, args.init)
    max_steps = args.max_steps or lab.default_orbit_bound(P, plan)
    report = lab.orbit_values(P, plan, start, args.setting, max_steps)
    rows = []
    lines = [f"orbit of {args.map} ({args.setting}) from {args.init}"]
    for step, state in enumerate(report.states):
        s = _state_repr(P, state, args.setting)
        rows.append({"orbit_id": 0, "step": step, "statistic": "state", "value": s})
        lines.append(f"  step {step}: {s}")
    if report.periodic:
        lines.append(f"period {report.period}")
    else:
        lines.append(f"aperiodic within {max_steps} steps")
    results = {
        "states": [
            [str(v) for v in state.values] for state in report.states
        ],
        "period": report.period,
        "max_steps": max_steps,
    }
    _emit(args, _envelope(args, "orbits", results), rows, lines)
    return 0


def cmd_verify(args) -> int:
    samples = args.samples = args.samples if args.samples is not None else 20
    seed = args.seed = args.seed if args.seed is not None else 0
    if args.theorem == "all":
        if args.a is None or args.b is None:
            raise UsageError("--a and --b are required")
        _guard_states(args.a, args.b, args.max_states)
        reports = verify.run_all(args.a, args.b, samples=samples, seed=seed)
    else:
        if args.theorem not in verify.THEOREMS:
            known = ", ".join(sorted(verify.THEOREMS) + ["all"])
            raise UsageError(f"unknown theorem id {args.theorem!r}; known ids: {known}")
        P = _parse_poset(args)
        _guard_states(args.a, args.b, args.max_states)
        kwargs = {"samples": samples, "seed": seed}
        if args.setting:
            kwargs["setting"] = args.setting
        reports = [verify.run_verify(args.theorem, args.a, args.b, **kwargs)]
    rows = []
    lines = []
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        lines.append(f"{status} {rep.theorem} {rep.params}")
        for c in rep.checks:
            mark = "ok" if c.passed else "FAILED"
            lines.append(f"  [{mark}] {c.label}")
            if not c.passed:
                lines.append(f"        {c.details}")
        rows.extend(rep.rows())
    results = [rep.to_dict() for rep in reports]
    _emit(args, _envelope(args, "verify", results, {"theorem": args.theorem}), rows, lines)
    return 0 if all(rep.passed for rep in reports) else 1


def _guard_states(a: int, b: int, max_states: int):
    count = math.comb(a + b, a)
    if count > max_states:
        raise SizeGuardError(
            f"|J([{a}]x[{b}])| = {count} exceeds the guard of {max_states} states"
        )


def cmd_span(args) -> int:
    P = _parse_poset(args)
    plan = _parse_map(P, args.map)
    _guard_states(args.a, args.b, args.max_states)
    report = lab.homomesy_span(P, plan, args.max_states)
    lines = [
        f"homomesic span of {args.map} on J([{args.a}]x[{args.b}])",
        f"dimension {report.dimension} (predicted {report.predicted_dimension})",
        f"comparison: {report.comparison}",
    ]
    for vec in report.basis:
        lines.append("  basis " + " ".join(str(c) for c in vec))
    _emit(args, _envelope(args, "span", report.to_dict()), report.rows(), lines)
    return 0


def cmd_trajectory(args) -> int:
    P = _parse_poset(args)
    plan = _parse_map(P, args.map)
    if args.init is None:
        raise UsageError("--init is required")
    start = _parse_init(P, args.setting, args.init)
    stat = _parse_stat(P, args.stat)
    setting = args.setting
    rows = []
    lines = [f"trajectory of {args.map} ({setting}) from {args.init}"]
    states = [start]
    if setting == "combinatorial":
        step = lab.combinatorial_step(P, plan)
    else:
        algebra, _, _ = profile_for_setting(setting)
        step = lab.array_step(algebra, P, plan)
    cur = start
    for k in range(args.steps):
        try:
            cur = step(cur)
        except SingularInputError as err:
            err.step = k + 1
            raise
        states.append(cur)
    out_states = []
    for k, state in enumerate(states):
        value = statistics.eval_stat(stat, state, setting)
        s = _state_repr(P, state, setting)
        rows.append({"sample_id": 0, "step": k, "statistic": stat.name, "value": str(value)})
        lines.append(f"  step {k}: {s}   {stat.name} = {value}")
        out_states.append(
            ideals.ideal_to_list(P, state)
            if setting == "combinatorial"
            else [str(v) for v in state.values]
        )
    results = {"states": out_states, "statistic": stat.name}
    _emit(args, _envelope(args, "trajectory", results), rows, lines)
    return 0


def cmd_experiment(args) -> int:
    if args.kind == "infinite-order":
        P = rect(2, 2)
        args.a, args.b = 2, 2
        plan = lab.resolved_infinite_order_plan(P)
        d = args.d
        ks = range(4, d + 1) if args.all_k else [args.k if args.k else max(4, d // 2)]
        reports = [lab.infinite_order_experiment(P, plan, d, k) for k in ks]
        ok = all(r.matches_reference and r.reaches_previous for r in reports)
        lines = [f"infinite-order experiment, d={d}, plan w,x,z,y"]
        for r in reports:
            lines.append(
                f"  k={r.k}: matches reference table: {r.matches_reference}, "
                f"reaches v_(k-2): {r.reaches_previous}"
            )
        results = {"reports": [r.to_dict() for r in reports]}
        extra = {}
        if args.cesaro:
            start = LabeledArray.unit_interval(
                P, [Fraction(v, d) for v in (1, ks[0], ks[0], ks[0])]
            )
            stat = statistics.custom(
                P, {(1, 1): 1, (2, 1): -1, (1, 2): -1, (2, 2): 1}, name="v1-v2-v3+v4"
            )
            ces = lab.cesaro_average(P, plan, start, stat, horizon=args.horizon)
            results["cesaro"] = ces.to_dict()
            lines.append(
                f"  cesaro: period {ces.period}, steps {ces.steps}, average {ces.average}"
            )
        rows = [
            {
                "sample_id": r.k,
                "step": "",
                "statistic": "matches-reference",
                "value": str(r.matches_reference),
            }
            for r in reports
        ]
        _emit(args, _envelope(args, "experiment", results, extra), rows, lines)
        return 0 if ok else 1
    if args.kind == "antichain":
        P = _parse_poset(args)
        args.samples = args.samples if args.samples is not None else 50
        args.seed = args.seed if args.seed is not None else 0
        report = lab.antichain_experiment(
            P, args.mode, samples=args.samples, seed=args.seed
        )
        lines = [
            f"antichain experiment ({args.mode}) on [{args.a}]x[{args.b}]",
            f"verdict: {report.verdict}"
            + (f", constant {report.constant}" if report.constant is not None else ""),
            "values: " + " ".join(str(v) for v in report.values),
        ]
        _emit(args, _envelope(args, "experiment", report.to_dict()), report.rows(), lines)
        return 0
    raise UsageError(f"unknown experiment {args.kind!r}")


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homomesy",
        description="Rowmotion/promotion dynamics on [a]x[b] in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, setting=True):
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        if setting:
            p.add_argument("--setting", choices=SETTINGS, default="combinatorial")
        p.add_argument("--map", default="rowmotion")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--out")

    p = sub.add_parser("orbits", help="orbit partition or a single orbit")
    common(p)
    p.add_argument("--init")
    p.add_argument("--max-states", type=int, default=ideals.DEFAULT_STATE_GUARD)
    p.add_argument("--max-steps", type=int)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("verify", help="run a theorem verification suite")
    p.add_argument("theorem")
    common(p, setting=False)
    p.add_argument("--setting", choices=SETTINGS)
    p.add_argument("--max-states", type=int, default=10**6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("span", help="exact homomesic span computation")
    common(p, setting=False)
    p.add_argument("--max-states", type=int, default=10**6)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("trajectory", help="step-by-step states with statistics")
    common(p)
    p.add_argument("--init")
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--stat", default="cardinality")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("experiment", help="the infinite-order and antichain programs")
    p.add_argument("kind", choices=("infinite-order", "antichain"))
    common(p)
    p.add_argument("--d", type=int, default=100)
    p.add_argument("--k", type=int)
    p.add_argument("--all-k", action="store_true")
    p.add_argument("--cesaro", action="store_true")
    p.add_argument("--horizon", type=int, default=10**5)
    p.add_argument("--mode", choices=("combinatorial", "pl", "birational"),
                   default="combinatorial")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except PosetError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SizeGuardError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except SingularInputError as err:
        print(f"error: singular input: {err}", file=sys.stderr)
        return 1
    except polytopes.MembershipError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
