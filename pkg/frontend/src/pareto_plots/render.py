"""Render figures from simulation and benchmark CSV files.

    render.py --kind <k> --in <csv> --out <file> [--summary <json>]

Kinds: stopping-hist (tau histogram, 50 bins, vertical lines at the mean
and, when a summary JSON carries t_star, at ln(1/delta) * T*),
timing-loglog (one mean-seconds-vs-p line per d, log-log axes, fitted
slopes in the legend), ratio-table (markdown speedup table).

The computed summary statistics are embedded verbatim in the output file
(PNG metadata / an HTML comment in markdown), so identical input yields
identical statistics.  These scripts only consume the CSV contract; they
never run the simulator.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("stopping-hist", "timing-loglog", "ratio-table")
HIST_BINS = 50

REQUIRED_COLUMNS = {
    "stopping-hist": ("tau",),
    "timing-loglog": ("p", "d", "mean_seconds"),
    "ratio-table": ("p", "generic_seconds", "fast_seconds", "ratio"),
}


class CsvError(Exception):
    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


def load_csv(path, columns) -> list[dict]:
    """Parse the named numeric columns; report the 1-based row on failure."""
    try:
        with open(path, newline="") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames
            if header is None:
                raise CsvError(f"{path}: empty file", exit_code=2)
            missing = [c for c in columns if c not in header]
            if missing:
                raise CsvError(
                    f"{path}: header row missing columns {missing}"
                )
            rows = []
            for i, raw in enumerate(reader, start=2):
                parsed = {}
                for col in columns:
                    value = raw.get(col)
                    if value is None:
                        raise CsvError(f"{path}: row {i}: missing '{col}'")
                    try:
                        parsed[col] = float(value)
                    except ValueError:
                        raise CsvError(
                            f"{path}: row {i}: bad value {value!r} "
                            f"in column '{col}'"
                        ) from None
                rows.append(parsed)
    except OSError as exc:
        raise CsvError(str(exc)) from exc
    if not rows:
        raise CsvError(f"{path}: no data rows", exit_code=2)
    return rows


def _loglog_slope(ps, ts) -> float:
    return float(np.polyfit(np.log(ps), np.log(ts), 1)[0])


def compute_stats(kind: str, rows: list[dict],
                  summary: dict | None = None) -> dict:
    """The statistics a figure displays, recomputed from its input rows."""
    if kind == "stopping-hist":
        taus = np.array([row["tau"] for row in rows])
        stats = {"runs": len(rows), "mean_tau": float(taus.mean())}
        if summary is not None and "t_star" in summary:
            stats["predicted_tau"] = float(
                math.log(1.0 / summary["delta"]) * summary["t_star"]
            )
        return stats
    if kind == "timing-loglog":
        stats = {"slopes": {}}
        for d in sorted({int(row["d"]) for row in rows}):
            ps = [row["p"] for row in rows if int(row["d"]) == d]
            ts = [row["mean_seconds"] for row in rows if int(row["d"]) == d]
            if len(ps) >= 2:
                stats["slopes"][str(d)] = _loglog_slope(ps, ts)
        return stats
    if kind == "ratio-table":
        return {
            "ratios": {str(int(row["p"])): float(row["ratio"])
                       for row in rows}
        }
    raise ValueError(f"unknown kind {kind!r}")


def _save_figure(fig, out_path: Path, stats: dict) -> None:
    meta = {"Description": json.dumps(stats, sort_keys=True)}
    fig.savefig(out_path, dpi=120, metadata=meta)
    plt.close(fig)


def _render_stopping_hist(rows, out_path, stats, summary) -> None:
    taus = np.array([row["tau"] for row in rows])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(taus, bins=HIST_BINS, color="#4878a8", edgecolor="white")
    ax.axvline(stats["mean_tau"], color="black", linestyle="--",
               label=f"mean tau = {stats['mean_tau']:.0f}")
    if "predicted_tau" in stats:
        ax.axvline(stats["predicted_tau"], color="crimson", linestyle=":",
                   label=f"ln(1/delta) T* = {stats['predicted_tau']:.0f}")
    ax.set_xlabel("stopping time")
    ax.set_ylabel("runs")
    ax.legend()
    fig.tight_layout()
    _save_figure(fig, out_path, stats)


def _render_timing_loglog(rows, out_path, stats) -> None:
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for d in sorted({int(row["d"]) for row in rows}):
        sub = sorted(
            (row["p"], row["mean_seconds"])
            for row in rows
            if int(row["d"]) == d
        )
        ps = [p for p, _ in sub]
        ts = [t for _, t in sub]
        slope = stats["slopes"].get(str(d))
        label = f"d={d}" if slope is None else f"d={d} (slope {slope:.2f})"
        ax.plot(ps, ts, marker="o", label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("Pareto front size p")
    ax.set_ylabel("seconds per oracle call")
    ax.legend()
    fig.tight_layout()
    _save_figure(fig, out_path, stats)


def _render_ratio_table(rows, out_path: Path, stats) -> None:
    lines = [
        f"<!-- stats: {json.dumps(stats, sort_keys=True)} -->",
        "",
        "| p | generic (s) | specialized (s) | speedup |",
        "|---|-------------|-----------------|---------|",
    ]
    for row in sorted(rows, key=lambda r: r["p"]):
        lines.append(
            f"| {int(row['p'])} | {row['generic_seconds']:.3e} "
            f"| {row['fast_seconds']:.3e} | {row['ratio']:.1f} |"
        )
    out_path.write_text("\n".join(lines) + "\n")


def render(kind: str, in_path, out_path, summary_path=None) -> dict:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    summary = None
    if summary_path is not None:
        summary = json.loads(Path(summary_path).read_text())
    rows = load_csv(in_path, REQUIRED_COLUMNS[kind])
    stats = compute_stats(kind, rows, summary)
    out_path = Path(out_path)
    if kind == "stopping-hist":
        _render_stopping_hist(rows, out_path, stats, summary)
    elif kind == "timing-loglog":
        _render_timing_loglog(rows, out_path, stats)
    else:
        _render_ratio_table(rows, out_path, stats)
    return stats


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render figures from bandit CSV outputs"
    )
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--in", dest="in_path", required=True,
                        help="input CSV")
    parser.add_argument("--out", required=True, help="output image/markdown")
    parser.add_argument("--summary", default=None,
                        help="optional summary JSON with delta and t_star")
    args = parser.parse_args(argv)
    try:
        stats = render(args.kind, args.in_path, args.out, args.summary)
    except CsvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    print(json.dumps(stats, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
