import json

import numpy as np
import pytest

from alemo.harness import (ConfigError, ExperimentConfig, aggregate, compare_runs, max_workers, read_trace,
                           run_experiment)

SMALL = dict(problem="zdt1", dim=3, objectives=2, budget=110, trials=2, seed=5)


@pytest.fixture(scope="module")
def small_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run_a")
    summary = run_experiment(ExperimentConfig(out=str(out), **SMALL))
    return out, summary


def test_artifacts(small_run):
    out, summary = small_run
    assert summary["trials_ok"] == [0, 1] and summary["failures"] == {}
    assert summary["config"]["problem"] == "ZDT1"
    names = sorted(p.name for p in out.iterdir())
    assert names == ["convergence.csv", "front_trial000.csv", "front_trial001.csv", "summary.json",
                     "trace_trial000.csv", "trace_trial001.csv"]
    conv = np.loadtxt(out / "convergence.csv", delimiter=",", skiprows=1)
    assert conv.shape == (110, 7)


def test_trace_schema_and_aggregates(small_run):
    out, summary = small_run
    traces = [read_trace(out / f"trace_trial{t:03d}.csv") for t in (0, 1)]
    for t, tr in enumerate(traces):
        assert tr["X"].shape == (110, 3) and tr["F"].shape == (110, 2)
        assert tr["meta"]["seed"] == str(5 + t)
        assert tr["phase"][0] == "init"
        assert np.all(np.diff(tr["hv"]) >= 0)
    hv = np.array([t["hv"] for t in traces])
    igd = np.array([t["igd"] for t in traces])
    conv = np.loadtxt(out / "convergence.csv", delimiter=",", skiprows=1)
    assert np.allclose(conv, aggregate(hv, igd), rtol=0, atol=1e-15)
    assert summary["median_hv"] == pytest.approx(np.median(hv[:, -1]))
    assert summary["final_igd"] == pytest.approx(igd[:, -1].tolist())


def test_same_seed_byte_identical(small_run, tmp_path):
    out, _ = small_run
    run_experiment(ExperimentConfig(out=str(tmp_path), **SMALL))
    for name in ("trace_trial000.csv", "trace_trial001.csv", "convergence.csv", "summary.json"):
        a = (out / name).read_bytes()
        b = (tmp_path / name).read_bytes()
        if name == "summary.json":
            a = json.loads(a)
            b = json.loads(b)
            a["config"].pop("out")
            b["config"].pop("out")
        assert a == b, name


def test_parallel_matches_serial(small_run, tmp_path, monkeypatch):
    monkeypatch.delenv("ALEMO_MAX_WORKERS", raising=False)
    out, _ = small_run
    run_experiment(ExperimentConfig(out=str(tmp_path), workers=2, **SMALL))
    assert (out / "trace_trial001.csv").read_bytes() == (tmp_path / "trace_trial001.csv").read_bytes()


def test_compare_with_itself(small_run, tmp_path):
    out, _ = small_run
    rep = compare_runs([out, out])
    entry = rep.problems["ZDT1-d3-m2"]
    assert set(entry["methods"]) == {"alemo", "alemo'"}
    assert all(st["rank"] == 1.5 for st in entry["methods"].values())
    assert list(entry["p_values"].values()) == [pytest.approx(1.0)]


def _fake(root, name, problem, label, hvs, budget=300):
    d = root / name
    d.mkdir()
    summary = {"config": {"problem": problem, "dim": 10, "objectives": 2, "budget": budget},
               "label": label, "failures": {}, "true_front": True, "final_hv": hvs,
               "median_igd": None}
    (d / "summary.json").write_text(json.dumps(summary))
    return d


def test_borda_ranking(tmp_path):
    dirs = [
        _fake(tmp_path, "a1", "ZDT1", "A", [0.9, 0.8, 0.85]),
        _fake(tmp_path, "b1", "ZDT1", "B", [0.7, 0.6, 0.65]),
        _fake(tmp_path, "c1", "ZDT1", "C", [0.1, 0.2, 0.15]),
        _fake(tmp_path, "a2", "DTLZ2", "A", [0.1, 0.1, 0.1]),
        _fake(tmp_path, "b2", "DTLZ2", "B", [0.5, 0.5, 0.5]),
        _fake(tmp_path, "c2", "DTLZ2", "C", [0.3, 0.3, 0.3]),
    ]
    rep = compare_runs(dirs)
    # ZDT1 ranks A1 B2 C3, DTLZ2 ranks B1 C2 A3
    assert rep.ranking == [("B", 3.0, 1.5), ("A", 4.0, 2.0), ("C", 5.0, 2.5)]
    assert "ranking" in rep.text()


def test_compare_rejects_mismatches(tmp_path):
    a = _fake(tmp_path, "a", "ZDT1", "A", [0.5])
    b = _fake(tmp_path, "b", "ZDT2", "B", [0.5])
    with pytest.raises(ValueError, match="mismatched problems"):
        compare_runs([a, b])
    c = _fake(tmp_path, "c", "ZDT1", "B", [0.5], budget=200)
    with pytest.raises(ValueError, match="budget"):
        compare_runs([a, c])


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(algo="cmaes").validated()
    with pytest.raises(ConfigError):
        ExperimentConfig(problem="ZDT9").validated()
    with pytest.raises(ConfigError):
        ExperimentConfig(budget=20).validated()
    with pytest.raises(ConfigError):
        ExperimentConfig(problem="DTLZ2", objectives=12, dim=5).validated()
    cfg = ExperimentConfig(problem="dtlz2", algo="NSGA2").validated()
    assert (cfg.problem, cfg.algo) == ("DTLZ2", "nsga2")


def test_worker_cap(monkeypatch):
    monkeypatch.setenv("ALEMO_MAX_WORKERS", "2")
    assert max_workers(8) == 2
    assert max_workers(1) == 1
    monkeypatch.setenv("ALEMO_MAX_WORKERS", "lots")
    assert max_workers(8) == 8
    monkeypatch.delenv("ALEMO_MAX_WORKERS")
    assert max_workers(3) == 3


def test_failed_trials_are_recorded(tmp_path, monkeypatch):
    import alemo.harness as h

    def boom(cfg, trial):
        raise RuntimeError("simulated crash")
    monkeypatch.setattr(h, "run_trial", boom)
    summary = run_experiment(ExperimentConfig(out=str(tmp_path), **SMALL))
    assert summary["trials_ok"] == []
    assert summary["failures"]["0"] == "RuntimeError: simulated crash"
