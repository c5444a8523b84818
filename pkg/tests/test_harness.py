import json

import numpy as np
import pytest

from simplegrowth import cli
from simplegrowth.harness import ConfigError, SuiteConfig, emit, reverify_file, run_suite
from simplegrowth.harness.config import DEFAULT_BATTERY, WORKERS_ENV
from simplegrowth.harness.run import CSV_COLUMNS, csv_text, jsonl_text
from simplegrowth.harness.sampling import instance_rng, sample_pattern, sample_subset
from simplegrowth.harness.suites import tasks_for
from simplegrowth.harness.verify import covering_classes_by_reps, reverify_record
from simplegrowth.normalsets import NormalSet


def small_config(**kw):
    samples = {"inequalities": 4, "growth": 4, "bigset": 3, "decomposition": 2, "normal": 4, "gowers": 5}
    base = dict(groups=["Alt(5)", "Cyclic(12)"], samples=samples)
    base.update(kw)
    return SuiteConfig(**base)


def test_sampling_fixture(alt5):
    # frozen at first run; PCG64 streams are specified bit-exactly by numpy
    assert sample_subset(alt5, 4, np.random.default_rng(42)).to_list() == [5, 26, 38, 44]
    assert sample_subset(alt5, 4, instance_rng(42, "fixture", 0)).to_list() == [0, 17, 32, 50]
    assert sample_subset(alt5, 60, np.random.default_rng(0)).card == 60


def test_sampling_bounds(alt5):
    with pytest.raises(ValueError):
        sample_subset(alt5, 0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        sample_subset(alt5, 61, np.random.default_rng(0))
    pat = sample_pattern(alt5, 4, instance_rng(1, "p", 0))
    assert pat == sample_pattern(alt5, 4, instance_rng(1, "p", 0))
    assert len(pat) == 4


def test_instance_streams_are_distinct():
    a = instance_rng(42, "x/y", 0).integers(1 << 30, size=4)
    b = instance_rng(42, "x/y", 1).integers(1 << 30, size=4)
    c = instance_rng(42, "x/z", 0).integers(1 << 30, size=4)
    assert not np.array_equal(a, b) and not np.array_equal(a, c)


def test_config_defaults_and_round_trip(tmp_path):
    cfg = SuiteConfig()
    assert tuple(cfg.groups) == DEFAULT_BATTERY and cfg.seed == 42
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    assert SuiteConfig.load(path).to_dict() == cfg.to_dict()


@pytest.mark.parametrize(
    "kw",
    [{"groups": ["PSL2(3)"]}, {"suites": ["nope"]}, {"seed": -1}],
)
def test_config_rejects(kw):
    with pytest.raises(ConfigError):
        SuiteConfig(**kw)


def test_config_unknown_key():
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"colour": "red"})


def test_empty_suites():
    report = run_suite(SuiteConfig(suites=[]))
    assert report.records == [] and report.exit_code == 0


def test_task_selection():
    tasks = tasks_for(small_config())
    kinds = {(g, k) for _, g, k in tasks}
    assert ("Cyclic(12)", "plunnecke_abelian") in kinds
    assert ("Alt(5)", "plunnecke_abelian") not in kinds
    # non-simple groups only take part in the inequality suite
    assert all(s == "inequalities" for s, g, _ in tasks if g == "Cyclic(12)")
    assert ("Alt(5)", "gowers") in kinds


def test_small_run_passes_and_reverifies(tmp_path):
    report = run_suite(small_config())
    assert report.exit_code == 0 and report.records
    paths = emit(report, tmp_path)
    n, problems = reverify_file(paths["jsonl"])
    assert n == len(report.records) and problems == []
    header = paths["csv"].read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    summary = json.loads(paths["run"].read_text())
    assert summary["theorem_failures"] == 0 and summary["records"] == n


def test_runs_are_byte_identical():
    a, b = run_suite(small_config()), run_suite(small_config())
    assert jsonl_text(a) == jsonl_text(b)
    assert csv_text(a) == csv_text(b)


def test_worker_count_does_not_change_output(monkeypatch):
    serial = run_suite(small_config(suites=["inequalities", "growth"]))
    monkeypatch.setenv(WORKERS_ENV, "2")
    parallel = run_suite(small_config(suites=["inequalities", "growth"]))
    assert jsonl_text(serial) == jsonl_text(parallel)


def test_seed_changes_instances():
    a = run_suite(small_config(suites=["growth"], seed=1))
    b = run_suite(small_config(suites=["growth"], seed=2))
    assert jsonl_text(a) != jsonl_text(b)


def test_reverify_detects_tampering():
    report = run_suite(small_config(suites=["inequalities"], groups=["Alt(5)"]))
    rec = dict(next(r for r in report.records if r["kind"] == "ruzsa"))
    assert reverify_record(rec) == []
    rec["lhs"] = "12345"
    assert reverify_record(rec)
    assert reverify_record({**rec, "kind": "unknown"}) == ["unknown: no recompute rule"]


def test_covering_by_representatives(alt5):
    five = NormalSet.from_classes(alt5, [2])
    assert covering_classes_by_reps(five.view, 1) == {2}
    assert covering_classes_by_reps(five.view, 3) == set(range(alt5.classes.count))
    assert len(covering_classes_by_reps(five.view, 2)) < alt5.classes.count


def test_cli_group_info(capsys, tmp_path):
    cache = tmp_path / "a5.txt"
    assert cli.main(["group", "info", "Alt(5)", "--cache", str(cache)]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["order"] == 60 and info["simple"]
    assert len(cache.read_text().splitlines()) == 60


def test_cli_rejects_bad_spec(capsys):
    assert cli.main(["group", "info", "PSL2(3)"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_verify_and_reverify(tmp_path, capsys):
    out = tmp_path / "run"
    code = cli.main(["verify", "--suite", "growth", "--groups", "Alt(5)", "--samples", "3", "--out", str(out)])
    assert code == 0
    assert "theorem failures: 0" in capsys.readouterr().out
    assert cli.main(["reverify", str(out / "instances.jsonl")]) == 0
    assert "0 discrepancies" in capsys.readouterr().out


def test_cli_decompose(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert cli.main(["decompose", "PSL2(7)", "--set-size", "3", "--seed", "1", "--out", str(path)]) == 0
    cert = json.loads(path.read_text())
    assert cert["verified"] and cert["N"] == len(cert["conjugators"])


def test_cli_normal_sweep(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    assert cli.main(["normal", "sweep", "Alt(5)", "--out", str(path)]) == 0
    rows = path.read_text().splitlines()
    assert rows[0] == "class_ids,size,square,growth_exponent,m,a_ratio"
    assert len(rows) == 1 + 15
    frontier = json.loads(capsys.readouterr().err)
    assert frontier["b_all_covered"] == 3


def test_largest_group_smoke(tmp_path):
    # PSL3(3), order 5616, is above the multiplication-table limit
    cfg = SuiteConfig(
        groups=["PSL3(3)"], suites=["growth", "decomposition"], samples={"growth": 3, "bigset": 3, "decomposition": 2}
    )
    report = run_suite(cfg)
    assert report.exit_code == 0
    n, problems = reverify_file(emit(report, tmp_path)["jsonl"])
    assert n == len(report.records) and problems == []
