import json

from homomesy import cli, verify
from homomesy.verify import CheckResult, VerifyReport


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_orbits_combinatorial(capsys):
    code, out, _ = run(
        capsys,
        ["orbits", "--a", "2", "--b", "2", "--setting", "combinatorial", "--map", "rowmotion"],
    )
    assert code == 0
    assert "lengths: [4, 2]; permutation order 4" in out


def test_orbits_birational_period(capsys):
    code, out, _ = run(
        capsys,
        [
            "orbits", "--a", "2", "--b", "2", "--setting", "birational",
            "--map", "rowmotion", "--init", "1,2,3,4",
        ],
    )
    assert code == 0
    assert "step 1: 1/4,5/8,5/12,5/4" in out
    assert "period 4" in out


def test_orbits_flag_error(capsys):
    code, _, err = run(capsys, ["orbits", "--a", "0", "--b", "2"])
    assert code == 2
    assert "positive" in err


def test_orbits_size_guard(capsys):
    code, _, err = run(
        capsys, ["orbits", "--a", "6", "--b", "6", "--max-states", "10"]
    )
    assert code == 3
    assert "guard" in err


def test_orbits_requires_init_for_arrays(capsys):
    code, _, err = run(
        capsys, ["orbits", "--a", "2", "--b", "2", "--setting", "birational"]
    )
    assert code == 2
    assert "--init" in err


def test_init_validation(capsys):
    code, _, err = run(
        capsys,
        ["trajectory", "--a", "2", "--b", "2", "--setting", "birational",
         "--init", "1,0,3,4", "--map", "rowmotion"],
    )
    assert code == 2
    assert "positive" in err
    code, _, err = run(
        capsys,
        ["trajectory", "--a", "2", "--b", "2", "--setting", "birational",
         "--init", "1,2,3", "--map", "rowmotion"],
    )
    assert code == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, ["verify", "thm-card", "--a", "3", "--b", "4"])
    assert code == 0
    assert "PASS thm-card" in out


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, ["verify", "thm-nonsense", "--a", "2", "--b", "2"])
    assert code == 2
    assert "known ids" in err and "thm-card" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    def failing(a, b, **kwargs):
        return VerifyReport(
            "stub", {"a": a, "b": b}, (CheckResult("always fails", False, {}),)
        )

    monkeypatch.setitem(verify.THEOREMS, "stub", failing)
    code, out, _ = run(capsys, ["verify", "stub", "--a", "2", "--b", "2"])
    assert code == 1
    assert "FAIL" in out


def test_verify_size_guard(capsys):
    code, _, err = run(
        capsys,
        ["verify", "thm-card", "--a", "10", "--b", "10", "--max-states", "1000"],
    )
    assert code == 3
    assert "guard" in err


def test_span_fixture(capsys):
    code, out, _ = run(capsys, ["span", "--a", "2", "--b", "2", "--map", "rowmotion"])
    assert code == 0
    assert "dimension 3" in out
    assert "comparison: equal" in out


def test_span_guard(capsys):
    code, _, err = run(
        capsys, ["span", "--a", "6", "--b", "6", "--max-states", "100"]
    )
    assert code == 3
    assert "924" in err


def test_span_6x6_passes_default_guard(capsys):
    code, out, _ = run(capsys, ["span", "--a", "6", "--b", "6", "--map", "promotion"])
    assert code == 0
    assert "comparison: equal" in out


def test_trajectory_twelve_steps(capsys):
    code, out, _ = run(
        capsys,
        [
            "trajectory", "--a", "2", "--b", "2", "--setting", "pl-unit",
            "--init", "1/100,50/100,50/100,50/100",
            "--map", "plan:1.1,2.1,2.2,1.2", "--steps", "12",
        ],
    )
    assert code == 0
    assert "step 12: 1/100,12/25,12/25,12/25" in out


def test_trajectory_letter_plan_and_stat(capsys):
    code, out, _ = run(
        capsys,
        [
            "trajectory", "--a", "2", "--b", "2", "--setting", "birational",
            "--init", "1,2,3,4", "--map", "rowmotion", "--steps", "4",
            "--stat", "file:2",
        ],
    )
    assert code == 0
    assert "step 4: 1,2,3,4" in out
    assert "file(2) = 4" in out


def test_trajectory_combinatorial(capsys):
    code, out, _ = run(
        capsys,
        [
            "trajectory", "--a", "2", "--b", "2", "--setting", "combinatorial",
            "--init", "1.1,2.1", "--map", "rowmotion", "--steps", "1",
        ],
    )
    assert code == 0
    assert "step 1" in out and "cardinality = 2" in out


def test_json_output_is_deterministic(capsys):
    argv = [
        "verify", "thm-prod", "--a", "2", "--b", "2", "--samples", "5",
        "--seed", "7", "--format", "json",
    ]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["version"] == "0.1.0"
    assert data["seed"] == 7
    assert data["poset"] == {"kind": "rect", "a": 2, "b": 2}


def test_csv_output(capsys):
    code, out, _ = run(
        capsys,
        ["orbits", "--a", "2", "--b", "2", "--map", "rowmotion", "--format", "csv"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "orbit_id,step,statistic,value"
    assert len(lines) == 7  # header + 6 states


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        ["span", "--a", "2", "--b", "2", "--format", "json", "--out", str(target)],
    )
    assert code == 0
    assert out == ""
    data = json.loads(target.read_text())
    assert data["results"]["dimension"] == 3


def test_experiment_infinite_order(capsys):
    code, out, _ = run(
        capsys, ["experiment", "infinite-order", "--d", "100", "--k", "50"]
    )
    assert code == 0
    assert "matches reference table: True" in out


def test_experiment_antichain(capsys):
    code, out, _ = run(
        capsys,
        ["experiment", "antichain", "--a", "2", "--b", "2", "--mode", "combinatorial"],
    )
    assert code == 0
    assert "verdict: homomesic, constant 1" in out


def test_experiment_antichain_birational(capsys):
    code, out, _ = run(
        capsys,
        ["experiment", "antichain", "--a", "2", "--b", "2", "--mode", "birational",
         "--samples", "5", "--seed", "3"],
    )
    assert code == 0
    assert "verdict: homomesic, constant 1" in out


def test_orbits_pl_homog(capsys):
    code, out, _ = run(
        capsys,
        ["orbits", "--a", "2", "--b", "2", "--setting", "pl-homog",
         "--map", "promotion", "--init", "1,-2,3,0"],
    )
    assert code == 0
    assert "period 4" in out


def test_verify_all_small(capsys):
    code, out, _ = run(
        capsys, ["verify", "all", "--a", "2", "--b", "2", "--samples", "5"]
    )
    assert code == 0
    assert out.count("PASS") > 20
    assert "FAIL" not in out
