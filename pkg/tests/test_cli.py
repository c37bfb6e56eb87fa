import csv
import io
import json

import pytest

from berezin_cpn.cli import main
from berezin_cpn.experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ExperimentReport,
    UnknownExperimentError,
    format_report,
    run_experiment,
)


def test_theorem1_example():
    report = run_experiment("theorem1", ExperimentConfig(n=1, N=3, pairs=500, seed=7))
    assert report.passed
    assert sum(r["disagreements"] for r in report.rows) == 0


def test_resolution_example():
    report = run_experiment("resolution", ExperimentConfig(n=1, N=1))
    assert report.passed and report.rows[0]["defect"] < 1e-12


def test_unknown_experiment():
    with pytest.raises(UnknownExperimentError):
        run_experiment("unknown")
    assert main(["unknown"]) == 2


@pytest.mark.parametrize("argv", [
    ["theorem1", "--level", "0"],
    ["theorem1", "--n", "-1"],
    ["theorem1", "--tol", "-1"],
    ["theorem1", "--pairs", "0"],
    ["star-exactness", "--n", "2", "--level", "1"],
    ["resolution", "--format", "xml"],
])
def test_invalid_config_exit_code(argv):
    assert main(argv) == 2


def test_exit_codes_and_stdout(capsys):
    assert main(["epsilon", "--level", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert list(doc) == ["experiment", "config", "rows", "pass", "wall_time_ms"]
    assert doc["pass"] is True and doc["config"]["N"] == 5


def test_failing_experiment_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(EXPERIMENTS, "epsilon", lambda cfg, rng: ([{"defect": 1.0}], False))
    assert main(["epsilon"]) == 1
    assert json.loads(capsys.readouterr().out)["pass"] is False


def test_rule_below_required_degree_is_usage_error():
    assert main(["star-exactness", "--level", "4", "--radial", "1", "--angular", "2"]) == 2


def test_unwritable_destination(tmp_path):
    assert main(["epsilon", "--out", str(tmp_path / "missing" / "r.json")]) == 1


def test_json_round_trip():
    report = run_experiment("corollary", ExperimentConfig(n=2, N=2, pairs=50))
    again = ExperimentReport.from_dict(json.loads(format_report(report, "json")))
    assert again.to_dict() == report.to_dict()


def test_empty_rows_document():
    empty = ExperimentReport("resolution", {}, [], True, 0)
    assert json.loads(format_report(empty, "json"))["rows"] == []
    assert list(csv.reader(io.StringIO(format_report(empty, "csv")))) in ([], [[]])


def test_correspondence_csv(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["correspondence", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == ["N", "d1", "d2", "fitted_slope"]
    assert [int(r["N"]) for r in rows] == [2, 4, 8, 16, 32]
    assert abs(float(rows[0]["fitted_slope"]) + 1) <= 0.15


def test_byte_identical_reruns(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["theorem1", "--pairs", "200", "--seed", "11", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert format_report(run_experiment("diastasis", ExperimentConfig(seed=3)), "csv") == format_report(
        run_experiment("diastasis", ExperimentConfig(seed=3)), "csv")


def test_nondeterministic_mode_records_time():
    report = run_experiment("isometry", ExperimentConfig(), deterministic=False)
    assert report.wall_time_ms >= 0


@pytest.mark.parametrize("name", sorted(EXPERIMENTS))
def test_every_experiment_passes_at_defaults(name):
    assert run_experiment(name).passed
