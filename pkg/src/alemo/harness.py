"""Seeded multi-trial experiments, their on-disk artifacts and comparisons.

Layout of an output directory::

    trace_trial000.csv   one row per true evaluation (phase, x, f, hv, igd)
    front_trial000.csv   final non-dominated set of that trial
    convergence.csv      per-eval median / mean / s.e.m. across trials
    summary.json         configuration, reference point, final metrics

Every file is written to a temporary name and renamed into place, and no
file carries timestamps, so re-running a seed reproduces it byte for byte.
"""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.stats import ranksums, rankdata

from .benchmarks import NAMES, Benchmark
from .metrics import default_reference_point, hypervolume
from .optimizer import AlemoConfig, RunTrace, alemo_run, nsga2_run
from .sampling import default_initial_size

log = logging.getLogger(__name__)

ALGORITHMS = ("alemo", "nsga2")
GEOTHERMAL = "geothermal"
FLOAT = "%.17g"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str = "ZDT1"
    dim: int = 10
    objectives: int = 2
    algo: str = "alemo"
    budget: int = 300
    trials: int = 20
    seed: int = 0
    workers: int = 1
    out: str = "runs/out"
    scenario: str | None = None
    metrics: tuple = ("hv", "igd")
    label: str | None = None

    def validated(self) -> "ExperimentConfig":
        algo = self.algo.lower()
        if algo not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algo!r}; choose from {', '.join(ALGORITHMS)}")
        problem = self.problem.upper() if self.problem.lower() != GEOTHERMAL else GEOTHERMAL
        if problem != GEOTHERMAL and problem not in NAMES:
            raise ConfigError(f"unknown problem {self.problem!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        bad = set(self.metrics) - {"hv", "igd"}
        if bad:
            raise ConfigError(f"unknown metrics {sorted(bad)}")
        cfg = replace(self, algo=algo, problem=problem, metrics=tuple(self.metrics))
        try:
            prob = cfg.make_problem()
        except (ValueError, OSError) as exc:
            raise ConfigError(str(exc)) from None
        floor = default_initial_size(prob.d) if algo == "alemo" else 50
        if self.budget < floor:
            raise ConfigError(f"budget {self.budget} is below the initial design size {floor}")
        return cfg

    def make_problem(self):
        if self.problem == GEOTHERMAL:
            from .geosim import geothermal_problem
            return geothermal_problem(self.scenario)
        return Benchmark(self.problem, d=self.dim, m=self.objectives)

    @property
    def tag(self) -> str:
        return self.label or self.algo


def max_workers(requested: int) -> int:
    cap = os.environ.get("ALEMO_MAX_WORKERS")
    if cap:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            log.warning("ignoring non-integer ALEMO_MAX_WORKERS=%r", cap)
    return requested


def run_trial(cfg: ExperimentConfig, trial: int) -> RunTrace:
    problem = cfg.make_problem()
    seed = cfg.seed + trial
    if cfg.algo == "alemo":
        return alemo_run(problem, AlemoConfig(budget=cfg.budget, seed=seed))
    return nsga2_run(problem, budget=cfg.budget, seed=seed)


def _safe_trial(cfg, trial):
    try:
        return trial, run_trial(cfg, trial), None
    except Exception as exc:  # one bad trial must not sink the batch
        return trial, None, f"{type(exc).__name__}: {exc}"


def _atomic_write(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _fmt(v) -> str:
    return FLOAT % v


def _rows(matrix) -> str:
    return "".join(",".join(_fmt(v) for v in row) + "\n" for row in matrix)


def write_trace(path: Path, trace: RunTrace, meta: dict, hv, igd):
    d, m = trace.X.shape[1], trace.F.shape[1]
    head = "".join(f"# {k}={meta[k]}\n" for k in sorted(meta))
    cols = ["eval_index", "phase"] + [f"x{i}" for i in range(d)] + [f"f{k}" for k in range(m)] + ["hv", "igd"]
    lines = [head, ",".join(cols), "\n"]
    for i in range(len(trace)):
        vals = [*trace.X[i], *trace.F[i], hv[i], igd[i]]
        lines.append(f"{i},{trace.phase[i]}," + ",".join(_fmt(v) for v in vals) + "\n")
    _atomic_write(path, "".join(lines))


def read_trace(path) -> dict:
    """Parse a trace file; raises ValueError on schema violations."""
    meta = {}
    rows = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key] = val
            elif line.startswith("eval_index"):
                cols = line.strip().split(",")
            elif line.strip():
                rows.append(line.strip().split(","))
    d, m = int(meta["d"]), int(meta["m"])
    if len(cols) != d + m + 4:
        raise ValueError(f"{path}: header has {len(cols)} columns, expected {d + m + 4}")
    if any(len(r) != len(cols) for r in rows):
        raise ValueError(f"{path}: ragged row")
    idx = np.array([int(r[0]) for r in rows])
    if not np.array_equal(idx, np.arange(len(rows))):
        raise ValueError(f"{path}: eval_index is not 0..n-1")
    num = np.array([[float(v) for v in r[2:]] for r in rows]).reshape(len(rows), d + m + 2)
    return {
        "meta": meta,
        "phase": [r[1] for r in rows],
        "X": num[:, :d],
        "F": num[:, d:d + m],
        "hv": num[:, d + m],
        "igd": num[:, d + m + 1],
    }


def _sem(a, axis=0):
    n = a.shape[axis]
    return np.std(a, axis=axis, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(a.shape[1 - axis])


def aggregate(hv: np.ndarray, igd: np.ndarray | None) -> np.ndarray:
    """(n_trials, n_evals) curves to rows of eval_index, median/mean/sem of HV then IGD."""
    cols = [np.arange(hv.shape[1]), np.median(hv, 0), np.mean(hv, 0), _sem(hv)]
    if igd is not None:
        cols += [np.median(igd, 0), np.mean(igd, 0), _sem(igd)]
    return np.column_stack(cols)


def reference_data(cfg: ExperimentConfig, traces):
    """(z, true front or None) for the experiment."""
    if cfg.problem == GEOTHERMAL:
        allF = np.vstack([t.F for t in traces])
        return default_reference_point(allF), None
    front = Benchmark(cfg.problem, d=cfg.dim, m=cfg.objectives).true_front().F
    return default_reference_point(front), front


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run every trial, write the artifacts and return the summary."""
    cfg = cfg.validated()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    workers = max_workers(cfg.workers)
    if workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, cfg.trials)) as pool:
            results = list(pool.map(_safe_trial, [cfg] * cfg.trials, range(cfg.trials)))
    else:
        results = [_safe_trial(cfg, t) for t in range(cfg.trials)]

    ok = [(t, tr) for t, tr, err in results if tr is not None]
    failures = {str(t): err for t, _, err in results if err is not None}
    for t, err in failures.items():
        log.error("trial %s failed: %s", t, err)
    summary = {
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(cfg).items()},
        "label": cfg.tag,
        "failures": failures,
        "trials_ok": [t for t, _ in ok],
    }
    if not ok:
        _atomic_write(out / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
        return summary

    z, front = reference_data(cfg, [tr for _, tr in ok])
    use_igd = front is not None and "igd" in cfg.metrics
    hv_curves, igd_curves = [], []
    for t, tr in ok:
        hv, ig = tr.convergence(z, front if use_igd else None)
        hv_curves.append(hv)
        igd_curves.append(ig)
        meta = {"algorithm": cfg.algo, "problem": cfg.problem, "d": tr.X.shape[1], "m": tr.F.shape[1],
                "seed": tr.seed, "trial": t, "budget": cfg.budget}
        write_trace(out / f"trace_trial{t:03d}.csv", tr, meta, hv, ig)
        ff = tr.final_front
        _atomic_write(out / f"front_trial{t:03d}.csv",
                      "# x then f columns\n" + _rows(np.hstack([tr.X[ff], tr.F[ff]])))
    hv_arr = np.array(hv_curves)
    igd_arr = np.array(igd_curves) if use_igd else None
    conv = aggregate(hv_arr, igd_arr)
    head = "eval_index,hv_median,hv_mean,hv_sem" + (",igd_median,igd_mean,igd_sem" if use_igd else "")
    _atomic_write(out / "convergence.csv", head + "\n" + _rows(conv))
    summary.update({
        "reference_point": z.tolist(),
        "true_front": front is not None,
        "final_hv": hv_arr[:, -1].tolist(),
        "final_igd": igd_arr[:, -1].tolist() if use_igd else None,
        "median_hv": float(np.median(hv_arr[:, -1])),
        "median_igd": float(np.median(igd_arr[:, -1])) if use_igd else None,
    })
    _atomic_write(out / "summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def load_summary(path) -> dict:
    path = Path(path)
    data = json.loads((path / "summary.json").read_text())
    for key in ("config", "label", "failures"):
        if key not in data:
            raise ValueError(f"{path}/summary.json lacks {key!r}")
    return data


def _final_hvs(dirs, summaries):
    """Final HV per directory under one shared reference point.

    Benchmarks already share the true-front reference point. Geothermal
    runs are rescored against the union of every evaluated point.
    """
    if all(s.get("true_front") for s in summaries):
        return [np.asarray(s["final_hv"]) for s in summaries]
    traces = [[read_trace(p) for p in sorted(Path(d).glob("trace_trial*.csv"))] for d in dirs]
    allF = np.vstack([t["F"] for ts in traces for t in ts])
    z = default_reference_point(allF)
    out = []
    for d in dirs:
        vals = []
        for p in sorted(Path(d).glob("front_trial*.csv")):
            rows = np.atleast_2d(np.loadtxt(p, delimiter=",", comments="#"))
            vals.append(hypervolume(rows[:, -len(z):], z))
        out.append(np.asarray(vals))
    return out


@dataclass
class Comparison:
    problems: dict = field(default_factory=dict)  # problem key -> per-method stats and p-values
    ranking: list = field(default_factory=list)  # (method, rank sum, mean rank), best first

    def to_dict(self) -> dict:
        return {"problems": self.problems, "ranking": [list(r) for r in self.ranking]}

    def text(self) -> str:
        lines = []
        for key in sorted(self.problems):
            entry = self.problems[key]
            lines.append(f"[{key}]")
            for name, st in entry["methods"].items():
                igd = st["median_igd"]
                igd_s = f"  median IGD {igd:.6g}" if igd is not None else ""
                lines.append(f"  {name:<12} median HV {st['median_hv']:.6g}{igd_s}  rank {st['rank']:g}")
            for pair, p in entry["p_values"].items():
                lines.append(f"  rank-sum p({pair}) = {p:.4g}")
        lines.append("ranking (sum of per-problem ranks, lower is better):")
        for name, total, mean in self.ranking:
            lines.append(f"  {name:<12} {total:g}  (mean {mean:.3g})")
        return "\n".join(lines)


def compare_runs(dirs) -> Comparison:
    """Medians, pairwise two-sided rank-sum tests and a Borda ranking.

    Directories are grouped by problem (name, d, m). Within a group the
    budgets must agree, and every method must appear in every group.
    """
    dirs = [Path(d) for d in dirs]
    if not dirs:
        raise ValueError("nothing to compare")
    groups: dict = {}
    for d in dirs:
        s = load_summary(d)
        c = s["config"]
        key = f"{c['problem']}-d{c['dim']}-m{c['objectives']}" if c["problem"] != GEOTHERMAL else GEOTHERMAL
        groups.setdefault(key, []).append((d, s))
    method_sets = []
    for key, members in groups.items():
        budgets = {s["config"]["budget"] for _, s in members}
        if len(budgets) > 1:
            raise ValueError(f"{key}: directories disagree on budget {sorted(budgets)}")
        names = []
        for _, s in members:
            name = s["label"]
            while name in names:
                name = name + "'"
            names.append(name)
        method_sets.append(tuple(sorted(names)))
        groups[key] = list(zip(names, members))
    if len(set(method_sets)) > 1:
        raise ValueError("mismatched problems: every method must be run on every problem")

    report = Comparison()
    totals: dict = {}
    for key, members in groups.items():
        names = [n for n, _ in members]
        sums = [s for _, (_, s) in members]
        hvs = _final_hvs([d for _, (d, _) in members], sums)
        med = np.array([np.median(h) if len(h) else np.nan for h in hvs])
        ranks = rankdata(-np.nan_to_num(med, nan=-np.inf))
        methods = {}
        for n, s, h, r in zip(names, sums, hvs, ranks):
            methods[n] = {
                "median_hv": float(np.median(h)) if len(h) else float("nan"),
                "median_igd": s.get("median_igd"),
                "trials": int(len(h)),
                "rank": float(r),
            }
            totals[n] = totals.get(n, 0.0) + float(r)
        pvals = {}
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                if len(hvs[i]) and len(hvs[j]):
                    pvals[f"{names[i]} vs {names[j]}"] = float(ranksums(hvs[i], hvs[j]).pvalue)
        report.problems[key] = {"methods": methods, "p_values": pvals}
    n_prob = len(groups)
    report.ranking = sorted(((n, t, t / n_prob) for n, t in totals.items()), key=lambda r: (r[1], r[0]))
    return report
