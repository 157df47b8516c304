"""Command-line driver tests.

Everything goes through main(argv) in process; stdout is the report
channel and stderr carries error text, so capsys separates them cleanly.
"""

import json
import math

import pytest
from numpy.testing import assert_allclose

from tailop.cli import COMMANDS, RunConfig, main, run
from tailop.copulas import mo_survival_copula

MO = ["--copula", "mo", "--l1", "1", "--l2", "1", "--l12", "1"]
VERIFY_MO = ["--l1", "1", "--l2", "1", "--l12", "1"]


def invoke(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_command_registry():
    assert COMMANDS == (
        "eval-copula",
        "tail-estimate",
        "tail-order",
        "simulate",
        "verify-theorem1",
        "verify-theorem2",
        "verify-example4",
    )


def test_tail_estimate_recovers_operator_limit(capsys):
    code, out, err = invoke(capsys, [
        "tail-estimate", *MO,
        "--A", "diag:0.6666666666666666,0.6666666666666666",
        "--w", "4,1",
    ])
    assert code == 0
    assert err == ""
    report = json.loads(out)
    assert list(report) == ["command", "params", "results", "version"]
    assert report["command"] == "tail-estimate"
    assert report["params"]["copula"] == "mo"
    assert report["params"]["target"] == "cdf"
    (row,) = report["results"]
    assert row["w1"] == 4.0 and row["w2"] == 1.0
    assert_allclose(row["value"], 2.0, rtol=1e-3)
    assert_allclose(row["slope"], 1.0, atol=0.05)
    assert row["converged"] is True
    assert row["diagnostic"] == "ok"


def test_tail_order_independence(capsys):
    code, out, err = invoke(capsys, [
        "tail-order", "--copula", "independence", "--d", "2", "--w", "1,1",
    ])
    assert code == 0
    (row,) = json.loads(out)["results"]
    assert_allclose(row["kappa"], 2.0, atol=0.01)
    assert row["converged"] is True


def test_verify_example4_identity(capsys):
    code, out, err = invoke(capsys, [
        "verify-example4", "--lambda", "1", "--beta", "1", "--gamma", "1,1",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["params"]["max_rel_deviation"] <= 1e-10
    rows = report["results"]
    assert len(rows) == 25
    assert all(row["passed"] is True for row in rows)
    assert all(row["rel_deviation"] <= 1e-10 for row in rows)


def test_verify_theorem1_hidden_support(capsys):
    code, out, err = invoke(capsys, ["verify-theorem1", *VERIFY_MO])
    assert code == 0
    report = json.loads(out)
    assert report["params"]["support"] == "hidden interior-cone intensity"
    assert report["params"]["max_rel_deviation"] <= 0.02
    rows = report["results"]
    assert len(rows) == 9
    assert list(rows[0]) == ["w1", "w2", "limit", "final_ratio", "rel_deviation", "passed"]
    assert all(row["passed"] is True for row in rows)


def test_verify_theorem2_round_trip(capsys):
    code, out, err = invoke(capsys, ["verify-theorem2", *VERIFY_MO])
    assert code == 0
    report = json.loads(out)
    assert report["params"]["max_rel_deviation"] <= 1e-10
    assert report["params"]["matrix_deviation"] <= 1e-10
    rows = report["results"]
    assert len(rows) == 25
    assert list(rows[0]) == [
        "w1", "w2", "input_value", "round_trip_value", "rel_deviation", "passed",
    ]


def test_eval_copula_json_values(capsys):
    code, out, err = invoke(capsys, [
        "eval-copula", *MO, "--u", "0.25,0.25", "--u", "0.5,0.5",
    ])
    assert code == 0
    rows = json.loads(out)["results"]
    assert list(rows[0]) == ["u1", "u2", "cdf", "joint_survival"]
    assert rows[0]["cdf"] == 0.125
    assert rows[1]["cdf"] == 0.25 * math.sqrt(2.0)


def test_eval_copula_csv_round_trips_floats(capsys):
    code, out, err = invoke(capsys, [
        "eval-copula", *MO, "--u", "0.5,0.5", "--format", "csv",
    ])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "u1,u2,cdf,joint_survival"
    cells = lines[1].split(",")
    copula = mo_survival_copula(1.0, 1.0, 1.0)
    assert float(cells[2]) == 0.25 * math.sqrt(2.0)
    assert float(cells[3]) == copula.joint_survival((0.5, 0.5))


def test_non_finite_floats_serialize_as_strings(capsys):
    # w on an axis is outside the scaling cone of a coupled matrix
    code, out, err = invoke(capsys, [
        "tail-estimate", *MO, "--A", "full:2,1,1,2", "--w", "1,0",
    ])
    assert code == 0
    (row,) = json.loads(out)["results"]
    assert row["value"] == 0.0
    assert row["slope"] == "nan"
    assert row["last_ratio"] == "nan"
    assert row["diagnostic"] == "outside_cone"
    assert row["converged"] is False


def test_simulate_csv_default(capsys):
    code, out, err = invoke(capsys, [
        "simulate", "--model", "mo", "--l1", "1", "--l2", "1", "--l12", "1",
        "--n", "3", "--seed", "7",
    ])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "T1,T2"
    assert len(lines) == 4
    for line in lines[1:]:
        t1, t2 = (float(cell) for cell in line.split(","))
        assert t1 > 0.0 and t2 > 0.0


def test_simulate_copula_scale_header(capsys):
    code, out, err = invoke(capsys, [
        "simulate", "--model", "pareto4", "--lam", "1", "--beta", "1",
        "--gamma", "1,2", "--n", "5", "--seed", "11", "--copula-scale",
    ])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "V1,V2"
    for line in lines[1:]:
        v1, v2 = (float(cell) for cell in line.split(","))
        assert 0.0 <= v1 <= 1.0 and 0.0 <= v2 <= 1.0


def test_simulate_json_params(capsys):
    code, out, err = invoke(capsys, [
        "simulate", "--model", "mo", "--l1", "1", "--l2", "3", "--l12", "1",
        "--n", "2", "--seed", "5", "--format", "json",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["params"]["family"] == "mo"
    assert report["params"]["n"] == 2
    assert report["params"]["seed"] == 5
    assert len(report["results"]) == 2


def test_reports_are_byte_identical(tmp_path):
    argv = [
        "simulate", "--model", "mo", "--l1", "1", "--l2", "1", "--l12", "1",
        "--n", "50", "--seed", "42",
    ]
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    other = tmp_path / "c.csv"
    assert main(argv[:-1] + ["43", "--out", str(other)]) == 0
    assert other.read_bytes() != first.read_bytes()


def test_verify_report_byte_identical(tmp_path):
    argv = ["verify-theorem2", *VERIFY_MO]
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


BAD_ARGV = [
    ("cross-family-param", ["tail-order", *MO, "--lam", "0.5", "--w", "1,1"]),
    ("missing-family-param",
     ["eval-copula", "--copula", "mo", "--l1", "1", "--l2", "1", "--u", "0.5,0.5"]),
    ("asymmetric-matrix", ["tail-estimate", *MO, "--A", "full:1,2,3,4", "--w", "1,1"]),
    ("matrix-wrong-count", ["tail-estimate", *MO, "--A", "diag:1", "--w", "1,1"]),
    ("matrix-bad-prefix", ["tail-estimate", *MO, "--A", "1,0,0,1", "--w", "1,1"]),
    ("point-outside-cube",
     ["eval-copula", "--copula", "independence", "--d", "2", "--u", "1.5,0.5"]),
    ("point-wrong-arity",
     ["eval-copula", "--copula", "independence", "--d", "2", "--u", "0.5"]),
    ("missing-points", ["eval-copula", *MO]),
    ("w-and-w-grid",
     ["tail-order", "--copula", "independence", "--d", "2",
      "--w", "1,1", "--w-grid", "3x3"]),
    ("no-weights", ["tail-order", "--copula", "independence", "--d", "2"]),
    ("malformed-grid", ["verify-theorem1", *VERIFY_MO, "--grid", "3y3"]),
    ("t-max-too-small", ["verify-theorem1", *VERIFY_MO, "--t-max", "50"]),
    ("bad-rel-tol", ["verify-theorem1", *VERIFY_MO, "--rel-tol", "1.5"]),
    ("seedless-simulate",
     ["simulate", "--model", "mo", "--l1", "1", "--l2", "1", "--l12", "1", "--n", "10"]),
    ("negative-rate",
     ["eval-copula", "--copula", "mo", "--l1", "-1", "--l2", "1", "--l12", "1",
      "--u", "0.5,0.5"]),
    ("bad-grid-count",
     ["tail-estimate", *MO, "--A", "diag:1,1", "--w", "1,1", "--count", "4"]),
]


@pytest.mark.parametrize("argv", [argv for _, argv in BAD_ARGV],
                         ids=[name for name, _ in BAD_ARGV])
def test_invalid_configuration_exits_2(capsys, argv):
    code, out, err = invoke(capsys, argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_unwritable_output_exits_2(capsys):
    code, out, err = invoke(capsys, [
        "eval-copula", "--copula", "independence", "--d", "2", "--u", "0.5,0.5",
        "--out", "/nonexistent/report.json",
    ])
    assert code == 2
    assert "--out" in err


def test_thread_cap_env(capsys, monkeypatch):
    argv = ["eval-copula", "--copula", "independence", "--d", "2", "--u", "0.5,0.5"]
    monkeypatch.setenv("TAILOP_THREADS", "soon")
    assert main(argv) == 2
    monkeypatch.setenv("TAILOP_THREADS", "-1")
    assert main(argv) == 2
    monkeypatch.setenv("TAILOP_THREADS", "4")
    assert main(argv) == 0
    capsys.readouterr()


def test_failed_verification_exits_3(capsys):
    code, out, err = invoke(capsys, [
        "verify-theorem1", *VERIFY_MO, "--rel-tol", "1e-9",
    ])
    assert code == 3
    # the report is still written; deviations are data
    report = json.loads(out)
    assert any(row["passed"] is False for row in report["results"])


def test_unknown_flag_raises_system_exit():
    with pytest.raises(SystemExit) as excinfo:
        main(["eval-copula", "--bogus"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("tailop ")


def test_run_config_writes_file(tmp_path):
    out = tmp_path / "report.json"
    config = RunConfig(
        command="eval-copula",
        params={"copula": "mo", "l1": 1.0, "l2": 1.0, "l12": 1.0,
                "u": ["0.25,0.25", "0.5,0.5"]},
        output=str(out),
        fmt="json",
    )
    assert run(config) == 0
    report = json.loads(out.read_text())
    assert report["command"] == "eval-copula"
    assert len(report["results"]) == 2
    assert report["results"][0]["cdf"] == 0.125


def test_run_config_boolean_flag(tmp_path):
    out = tmp_path / "batch.csv"
    config = RunConfig(
        command="simulate",
        params={"model": "mo", "l1": 1, "l2": 1, "l12": 1,
                "n": 5, "seed": 3, "copula-scale": True},
        output=str(out),
        fmt="csv",
    )
    assert run(config) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "V1,V2"
    assert len(lines) == 6
