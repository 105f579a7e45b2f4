import json
import math

import numpy as np
import pytest

from pareto_tas import BanditInstance, LearnerConfig
from pareto_tas import experiments
from pareto_tas.cli import (
    EXIT_VERIFY_FAILED,
    load_instance,
    main,
)
from pareto_tas.data import covid_instance


def test_load_embedded_covid_roundtrip():
    inst = load_instance("covid")
    again = BanditInstance.from_json(inst.to_json())
    np.testing.assert_array_equal(again.means, inst.means)
    np.testing.assert_array_equal(
        inst.variances, np.array([0.70, 0.83, 1.54])
    )
    assert inst.means.shape == (20, 3)


def test_load_instance_generators_and_errors(tmp_path):
    sph = load_instance("sphere:5,3,7")
    assert sph.means.shape == (6, 3)
    stair = load_instance("staircase:4,1")
    assert stair.means.shape == (5, 2)
    with pytest.raises(SystemExit):
        load_instance("no-such-instance")
    path = tmp_path / "inst.json"
    path.write_text(covid_instance().to_json())
    np.testing.assert_array_equal(
        load_instance(str(path)).means, covid_instance().means
    )


def test_solve_two_arm_toy(tmp_path, capsys):
    inst = BanditInstance(np.array([[0.0], [2.0]]), np.ones(1))
    path = tmp_path / "toy.json"
    path.write_text(inst.to_json())
    rc = main(["solve", "--instance", str(path), "--iterations", "3000",
               "--out", str(tmp_path)])
    assert rc == 0
    payload = json.loads((tmp_path / "solve.json").read_text())
    assert payload["t_star"] == pytest.approx(2.0, rel=1e-2)
    assert payload["converged"]
    assert sum(payload["w_star"].values()) == pytest.approx(1.0)
    assert "T* = 2.00" in capsys.readouterr().out


def test_simulate_writes_csv_and_summary(tmp_path):
    rc = main(["simulate", "--instance", "sphere:3,2", "--runs", "8",
               "--delta", "0.2", "--workers", "2", "--seed", "11",
               "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "runs.csv").read_text().split("\n")
    assert lines[0] == "seed,tau,correct,count_0,count_1,count_2,count_3"
    assert lines[1].startswith("11,")
    assert len([ln for ln in lines if ln]) == 9
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["runs"] == 8
    assert 0.0 <= summary["error_rate"] <= 1.0
    taus = [int(ln.split(",")[1]) for ln in lines[1:] if ln]
    assert summary["mean_tau"] == pytest.approx(np.mean(taus))
    # counts add up to tau on each row
    for ln in lines[1:]:
        if not ln:
            continue
        cols = [int(x) for x in ln.split(",")]
        assert sum(cols[3:]) == cols[1]


def test_simulate_deterministic_across_worker_counts(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out, workers in ((a, "1"), (b, "3")):
        out.mkdir()
        main(["simulate", "--instance", "sphere:3,2", "--runs", "6",
              "--workers", workers, "--out", str(out)])
    assert (a / "runs.csv").read_bytes() == (b / "runs.csv").read_bytes()


def test_workers_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PARETO_TAS_THREADS", "1")
    rc = main(["simulate", "--instance", "sphere:3,2", "--runs", "2",
               "--workers", "4", "--out", str(tmp_path)])
    assert rc == 0


def test_bench_outputs(tmp_path, capsys):
    rc = main(["bench", "--pd-grid", "2,2;4,2", "--samples", "3",
               "--ratio-ps", "2,4", "--out", str(tmp_path)])
    assert rc == 0
    bench_lines = (tmp_path / "bench.csv").read_text().split("\n")
    assert bench_lines[0] == "p,d,mean_seconds,std_seconds"
    assert len([ln for ln in bench_lines if ln]) == 3
    for ln in bench_lines[1:]:
        if ln:
            p, d, mean, std = ln.split(",")
            assert float(mean) > 0
    speed_lines = (tmp_path / "speedup.csv").read_text().split("\n")
    assert speed_lines[0] == "p,generic_seconds,fast_seconds,ratio"
    out = capsys.readouterr().out
    assert "log-log slope" in out


def test_bench_rejects_empty_grid(tmp_path):
    with pytest.raises(SystemExit):
        main(["bench", "--pd-grid", "", "--out", str(tmp_path)])


def test_verify_passes_and_detects_fault(capsys):
    assert main(["verify", "--budget", "8"]) == 0
    assert main(["verify", "--budget", "0"]) == 0
    assert "vacuous" in capsys.readouterr().out
    rc = main(["verify", "--budget", "5", "--mutate", "remove-sign"])
    assert rc == EXIT_VERIFY_FAILED


def test_summarize_runs_quantiles():
    recs = [
        experiments.RunRecord(tau=t, answer=(0,), correct=True,
                              counts=np.array([t]), wall_time=0.0)
        for t in (10, 20, 30, 40)
    ]
    s = experiments.summarize_runs(recs, 0.1, t_star=100.0)
    assert s["mean_tau"] == 25.0
    assert s["quantiles"]["0.5"] == 25.0
    assert s["predicted_tau"] == pytest.approx(math.log(10.0) * 100.0)


def test_loglog_slope_recovers_power_law():
    ps = [4, 8, 16, 32]
    times = [1e-6 * p**3 for p in ps]
    assert experiments.loglog_slope(ps, times) == pytest.approx(3.0)


def test_runs_csv_lf_endings():
    recs = [
        experiments.RunRecord(tau=5, answer=(0,), correct=False,
                              counts=np.array([3, 2]), wall_time=0.0)
    ]
    text = experiments.runs_csv(recs, 7)
    assert "\r" not in text
    assert text == "seed,tau,correct,count_0,count_1\n7,5,0,3,2\n"
