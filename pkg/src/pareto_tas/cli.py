"""Command-line front end: offline solve, Monte-Carlo simulation,
oracle benchmarks, and brute-force verification sweeps.

Outputs are CSV/JSON files meant for the plotting scripts; everything is
deterministic given the seed and independent of the worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments
from .data import EMBEDDED, random_instance, sphere_quadrant_instance, staircase_2d_instance
from .learner import LearnerConfig, solve_t_star
from .model import BanditInstance, pareto_set, rescale_to_unit_variance, transport_cost
from .oracle import min_alt_cost
from .remove import best_removal, best_removal_2d, remove_cost
from .add import best_addition, best_addition_2d
from .cells import FEASIBILITY_TOL, empty_graph, extend
from .reference import bellman_ford_feasible, exhaustive_min_alt

EXIT_NOT_CONVERGED = 3
EXIT_VERIFY_FAILED = 4
EXIT_BAD_INPUT = 2


def load_instance(spec: str) -> BanditInstance:
    """'covid', a JSON file path, 'sphere:P,D[,SEED]' or 'staircase:P[,SEED]'."""
    if spec in EMBEDDED:
        return EMBEDDED[spec]()
    if spec.startswith("sphere:"):
        parts = [int(x) for x in spec.split(":", 1)[1].split(",")]
        p, d = parts[0], parts[1]
        seed = parts[2] if len(parts) > 2 else 0
        return sphere_quadrant_instance(p, d, seed)
    if spec.startswith("staircase:"):
        parts = [int(x) for x in spec.split(":", 1)[1].split(",")]
        p = parts[0]
        seed = parts[1] if len(parts) > 1 else 0
        return staircase_2d_instance(p, seed)
    path = Path(spec)
    if not path.is_file():
        raise SystemExit(f"unknown instance '{spec}'")
    return BanditInstance.from_json(path.read_text())


def _workers(args) -> int:
    env = os.environ.get("PARETO_TAS_THREADS")
    if env is not None:
        return max(1, int(env))
    if args.workers is not None:
        return max(1, args.workers)
    return max(1, os.cpu_count() or 1)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    res = solve_t_star(instance, iterations=args.iterations,
                       tolerance=args.tolerance)
    labels = instance.labels or tuple(
        str(k) for k in range(instance.n_arms)
    )
    payload = {
        "t_star": res.t_star,
        "value": res.value,
        "upper_bound": res.upper_bound,
        "converged": res.converged,
        "iterations": res.iterations,
        "w_star": {labels[k]: float(res.w_star[k])
                   for k in range(instance.n_arms)},
    }
    print(f"T* = {res.t_star:.2f}  (value {res.value:.6e}, "
          f"certified upper bound {res.upper_bound:.6e})")
    order = np.argsort(-res.w_star)
    for k in order[:5]:
        print(f"  w*[{labels[k]}] = {res.w_star[k]:.4f}")
    if args.out is not None:
        experiments.write_json(_out_dir(args) / "solve.json", payload)
    if not res.converged:
        print("warning: duality gap above tolerance; "
              "value is a certified lower bound only", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return 0


def cmd_simulate(args) -> int:
    instance = load_instance(args.instance)
    config = LearnerConfig(
        delta=args.delta,
        gradient_period=args.gradient_period,
        stopping_period=args.stopping_period,
        max_steps=args.max_steps,
        seed=args.seed,
    )
    records = experiments.simulate(instance, config, args.runs,
                                   workers=_workers(args))
    t_star = None
    if args.with_t_star:
        t_star = solve_t_star(instance).t_star
    summary = experiments.summarize_runs(records, args.delta, t_star)
    out = _out_dir(args)
    experiments.write_text(out / "runs.csv",
                           experiments.runs_csv(records, args.seed))
    experiments.write_json(out / "summary.json", summary)
    print(f"{args.runs} runs: mean tau {summary['mean_tau']:.1f}, "
          f"error rate {summary['error_rate']:.3f}, "
          f"aborted {summary['aborted']}")
    return 0


def _parse_pd_grid(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        p, d = chunk.split(",")
        pairs.append((int(p), int(d)))
    if not pairs:
        raise SystemExit("empty --pd-grid")
    return pairs


def cmd_bench(args) -> int:
    pairs = _parse_pd_grid(args.pd_grid)
    rows = experiments.bench_rows(
        pairs, args.samples, args.seed,
        lambda p, d, seed: sphere_quadrant_instance(p, d, seed),
        path=args.path,
    )
    out = _out_dir(args)
    experiments.write_text(out / "bench.csv", experiments.bench_csv(rows))
    for row in rows:
        print(f"p={row['p']:>3} d={row['d']}  "
              f"{row['mean_seconds']:.3e} s +/- {row['std_seconds']:.1e}")
    for d in sorted({d for _, d in pairs}):
        ps = [row["p"] for row in rows if row["d"] == d]
        ts = [row["mean_seconds"] for row in rows if row["d"] == d]
        if len(ps) >= 2:
            print(f"d={d}: log-log slope "
                  f"{experiments.loglog_slope(ps, ts):.2f}")
    ratio_ps = [int(p) for p in args.ratio_ps.split(",") if p.strip()]
    if ratio_ps:
        ratio_rows = experiments.speedup_rows(
            ratio_ps, args.samples, args.seed,
            lambda p, d, seed: staircase_2d_instance(p, seed),
        )
        experiments.write_text(out / "speedup.csv",
                               experiments.speedup_csv(ratio_rows))
        for row in ratio_rows:
            print(f"p={row['p']:>3}  generic/fast ratio "
                  f"{row['ratio']:.1f}")
    return 0


def _verify_remove(rng, trials, remove_fn) -> int:
    bad = 0
    for _ in range(trials):
        K = int(rng.integers(2, 7))
        d = int(rng.integers(1, 4))
        mu = rng.uniform(0, 10, size=(K, d))
        w = rng.uniform(0, 1, size=K)
        cand = remove_fn(mu, w, 0, 1)
        lam = mu.copy()
        lam[0], lam[1] = cand.lambda_pair
        ok = (
            abs(transport_cost(mu, lam, w) - cand.cost) <= 1e-9
            and np.all(cand.lambda_pair[0] <= cand.lambda_pair[1] + 1e-9)
        )
        bad += not ok
    return bad


def _verify_cells(rng, trials) -> int:
    bad = 0
    for _ in range(trials):
        d = int(rng.integers(2, 5))
        graph = empty_graph(d)
        edges = []
        for _ in range(int(rng.integers(1, 6))):
            row = rng.normal(size=d)
            j = int(rng.integers(d))
            new = [(j, x, row[x] - row[j]) for x in range(d) if x != j]
            nxt = extend(graph, row, j)
            ref = bellman_ford_feasible(edges + new, d, tol=FEASIBILITY_TOL)
            if (nxt is not None) != ref:
                bad += 1
                break
            if nxt is None:
                break
            graph, edges = nxt, edges + new
    return bad


def _verify_oracle(rng, trials) -> int:
    bad = 0
    for _ in range(trials):
        K = int(rng.integers(2, 8))
        d = int(rng.integers(1, 4))
        inst = random_instance(K, d, seed=int(rng.integers(2**31)))
        w = rng.uniform(0, 1, size=K)
        res = min_alt_cost(inst, w)
        ref = exhaustive_min_alt(inst.means, w, res.pareto)
        if abs(res.cost - ref.cost) > 1e-9 * max(1.0, abs(ref.cost)):
            bad += 1
    return bad


def _verify_2d(rng, trials) -> int:
    bad = 0
    for _ in range(trials):
        K = int(rng.integers(2, 12))
        mu = rng.uniform(0, 10, size=(K, 2))
        w = rng.uniform(0, 1, size=K)
        par = pareto_set(mu)
        rf, rs = best_removal_2d(mu, w, par), best_removal(mu, w, par)
        af, aslow = best_addition_2d(mu, w, par), best_addition(mu, w, par)
        for fast, slow in ((rf, rs), (af, aslow)):
            if (fast is None) != (slow is None):
                bad += 1
            elif fast is not None and abs(fast.cost - slow.cost) > 1e-8 * max(
                1.0, abs(slow.cost)
            ):
                bad += 1
    return bad


def _flipped_remove_cost(mu, w, k0, k1):
    """Deliberately corrupted pair transport (positive-part sign flipped);
    exists only so the verify sweep can demonstrate fault detection."""
    mu = np.asarray(mu, dtype=float)
    cand = remove_cost(mu, w, k0, k1)
    gaps = np.maximum(mu[k1] - mu[k0], 0.0)
    w0, w1 = float(w[k0]), float(w[k1])
    scale = 0.5 * w0 * w1 / (w0 + w1) if w0 + w1 > 0 else 0.0
    return type(cand)(k0=k0, k1=k1,
                      cost=float(scale * np.sum(gaps**2)),
                      lambda_pair=cand.lambda_pair)


def cmd_verify(args) -> int:
    if args.budget == 0:
        print("warning: budget 0, vacuous pass")
        return 0
    rng = np.random.default_rng(args.seed)
    remove_fn = _flipped_remove_cost if args.mutate == "remove-sign" else remove_cost
    checks = [
        ("remove closed form", _verify_remove(rng, args.budget, remove_fn)),
        ("cell feasibility vs Bellman-Ford", _verify_cells(rng, args.budget)),
        ("oracle vs exhaustive", _verify_oracle(rng, args.budget)),
        ("2D fast paths vs generic", _verify_2d(rng, args.budget)),
    ]
    failed = 0
    for name, bad in checks:
        status = "PASS" if bad == 0 else f"FAIL ({bad}/{args.budget})"
        print(f"{name}: {status}")
        failed += bad
    return EXIT_VERIFY_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-tas",
        description="Pareto front identification for Gaussian bandits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--instance", default="covid",
                       help="embedded name, JSON path, sphere:P,D or staircase:P")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output directory")

    solve = sub.add_parser("solve", help="offline characteristic time")
    common(solve)
    solve.add_argument("--iterations", type=int, default=20000)
    solve.add_argument("--tolerance", type=float, default=1e-3)
    solve.set_defaults(fn=cmd_solve)

    sim = sub.add_parser("simulate", help="Monte-Carlo identification runs")
    common(sim)
    sim.add_argument("--delta", type=float, default=0.1)
    sim.add_argument("--runs", type=int, default=200)
    sim.add_argument("--gradient-period", type=int, default=10)
    sim.add_argument("--stopping-period", type=int, default=25)
    sim.add_argument("--max-steps", type=int, default=10**6)
    sim.add_argument("--workers", type=int, default=None)
    sim.add_argument("--with-t-star", action="store_true",
                     help="also solve T* and record the predicted mean tau")
    sim.set_defaults(fn=cmd_simulate)

    bench = sub.add_parser("bench", help="oracle timing benchmarks")
    common(bench)
    bench.add_argument("--pd-grid", default="4,2;8,2;16,2;32,2;4,3;8,3;16,3;32,3")
    bench.add_argument("--samples", type=int, default=20)
    bench.add_argument("--path", choices=("auto", "generic"), default="auto",
                       help="'generic' disables the 2D shortcut so timings "
                            "reflect the cell-enumeration algorithm")
    bench.add_argument("--ratio-ps", default="2,4,8,16,32,64",
                       help="front sizes for the 2D speedup table; '' to skip")
    bench.set_defaults(fn=cmd_bench)

    verify = sub.add_parser("verify", help="brute-force equivalence sweeps")
    verify.add_argument("--budget", type=int, default=50)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--mutate", default=None, help=argparse.SUPPRESS)
    verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        args.out = args.out or "."
    if args.command == "bench":
        args.out = args.out or "."
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
