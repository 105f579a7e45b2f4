"""Monte-Carlo simulation fan-out and oracle timing benchmarks.

Runs are seeded as master_seed + run_index, so results never depend on the
worker count.  CSV output uses a header row, comma separators, '.' decimals
and LF line endings; the plots component parses these files verbatim.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from multiprocessing import Pool

import numpy as np

from .add import best_addition, best_addition_2d
from .learner import LearnerConfig, RunRecord, run
from .model import BanditInstance, pareto_set, rescale_to_unit_variance
from .oracle import min_alt_cost
from .remove import best_removal, best_removal_2d


def _one_run(args) -> RunRecord:
    instance, config = args
    return run(instance, config)


def simulate(instance: BanditInstance, config: LearnerConfig, runs: int,
             workers: int = 1) -> list[RunRecord]:
    """Independent identification runs with seeds master + 0 .. master + runs-1."""
    if runs < 1:
        raise ValueError("need at least one run")
    jobs = [
        (instance, dataclasses.replace(config, seed=config.seed + i))
        for i in range(runs)
    ]
    if workers <= 1:
        return [_one_run(job) for job in jobs]
    with Pool(processes=workers) as pool:
        return pool.map(_one_run, jobs)


def runs_csv(records: list[RunRecord], base_seed: int) -> str:
    """seed, tau, correct, then one count column per arm."""
    K = records[0].counts.shape[0]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["seed", "tau", "correct"] + [f"count_{k}" for k in range(K)]
    )
    for i, rec in enumerate(records):
        writer.writerow(
            [base_seed + i, rec.tau, int(rec.correct)]
            + [int(c) for c in rec.counts]
        )
    return buf.getvalue()


def summarize_runs(records: list[RunRecord], delta: float,
                   t_star: float | None = None) -> dict:
    taus = np.array([rec.tau for rec in records], dtype=float)
    summary = {
        "runs": len(records),
        "mean_tau": float(taus.mean()),
        "std_tau": float(taus.std()),
        "error_rate": float(np.mean([not rec.correct for rec in records])),
        "aborted": int(sum(rec.aborted for rec in records)),
        "delta": delta,
        "quantiles": {
            str(q): float(np.quantile(taus, q))
            for q in (0.1, 0.25, 0.5, 0.75, 0.9)
        },
    }
    if t_star is not None:
        # ln(1/delta) * T* is the leading-order prediction for E[tau]
        summary["t_star"] = float(t_star)
        summary["predicted_tau"] = float(np.log(1.0 / delta) * t_star)
    return summary


def _simplex_point(rng, K: int) -> np.ndarray:
    return rng.dirichlet(np.ones(K))


def time_oracle(instance: BanditInstance, samples: int, seed: int,
                repeats: int = 1, path: str = "auto") -> tuple[float, float]:
    """Mean and std of seconds per oracle call at random simplex weights.

    path 'auto' times min_alt_cost with its dispatch; 'generic' pins the
    cell-enumeration algorithm even when the 2D shortcut would apply, which
    is the variant whose growth in p the scaling benchmark measures.
    """
    if path not in ("auto", "generic"):
        raise ValueError("path must be 'auto' or 'generic'")
    rng = np.random.default_rng(seed)
    K = instance.n_arms
    scaled, _ = rescale_to_unit_variance(instance)
    par = pareto_set(scaled)
    times = []
    for _ in range(samples):
        w = _simplex_point(rng, K)
        start = time.perf_counter()
        for _ in range(repeats):
            if path == "auto":
                min_alt_cost(instance, w)
            else:
                best_removal(scaled, w, par)
                best_addition(scaled, w, par)
        times.append((time.perf_counter() - start) / repeats)
    arr = np.array(times)
    return float(arr.mean()), float(arr.std())


def bench_rows(pd_pairs: list[tuple[int, int]], samples: int, seed: int,
               make_instance, path: str = "auto") -> list[dict]:
    """Time the oracle on fresh instances for each (p, d) pair."""
    rows = []
    for p, d in pd_pairs:
        inst = make_instance(p, d, seed)
        mean, std = time_oracle(inst, samples, seed + 1, path=path)
        rows.append({"p": p, "d": d, "mean_seconds": mean, "std_seconds": std})
    return rows


def bench_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "d", "mean_seconds", "std_seconds"])
    for row in rows:
        writer.writerow(
            [row["p"], row["d"],
             repr(row["mean_seconds"]), repr(row["std_seconds"])]
        )
    return buf.getvalue()


def _time_paths_2d(instance: BanditInstance, samples: int,
                   seed: int) -> tuple[float, float]:
    """Seconds per call for the generic and the 2D-specialized oracle."""
    scaled, _ = rescale_to_unit_variance(instance)
    par = pareto_set(scaled)
    rng = np.random.default_rng(seed)
    ws = [_simplex_point(rng, instance.n_arms) for _ in range(samples)]

    start = time.perf_counter()
    for w in ws:
        best_removal(scaled, w, par)
        best_addition(scaled, w, par)
    generic = (time.perf_counter() - start) / samples

    start = time.perf_counter()
    for w in ws:
        best_removal_2d(scaled, w, par)
        best_addition_2d(scaled, w, par)
    fast = (time.perf_counter() - start) / samples
    return generic, fast


def speedup_rows(ps: list[int], samples: int, seed: int,
                 make_instance) -> list[dict]:
    """2D generic-vs-specialized timing ratio per Pareto front size."""
    rows = []
    for p in ps:
        inst = make_instance(p, 2, seed)
        generic, fast = _time_paths_2d(inst, samples, seed + 1)
        rows.append(
            {"p": p, "generic_seconds": generic, "fast_seconds": fast,
             "ratio": generic / fast}
        )
    return rows


def speedup_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "generic_seconds", "fast_seconds", "ratio"])
    for row in rows:
        writer.writerow(
            [row["p"], repr(row["generic_seconds"]),
             repr(row["fast_seconds"]), repr(row["ratio"])]
        )
    return buf.getvalue()


def loglog_slope(ps, times) -> float:
    """Least-squares slope of log(time) against log(p)."""
    return float(np.polyfit(np.log(np.asarray(ps, dtype=float)),
                            np.log(np.asarray(times, dtype=float)), 1)[0])


def write_text(path, text: str) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(text)


def write_json(path, payload: dict) -> None:
    with open(path, "w", newline="") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
