import json
import os
import subprocess

import pytest

import kpbit


def triangle():
    return kpbit.parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")


def test_graph_round_trip_and_objective():
    g = kpbit.generate_random_graph(12, 0.4, 3)
    assert kpbit.parse_graph(g.to_text()) == g
    t = triangle()
    assert kpbit.cut_value(t, 3, [0, 1, 2]) == 3
    assert kpbit.energy(t, 3, [0, 1, 2]) == -3
    assert kpbit.synaptic_input(t, 3, [0, 0, 0], 0) == -2


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="line 2"):
        kpbit.parse_graph("p edge 2 1\ne 1 1\n")


def test_direct_engine_and_baseline_on_triangle():
    t = triangle()
    res = kpbit.run_trials(t, k=3, sweeps=100, trials=20, seed=7)
    assert res["max_best"] == 3
    assert len(res["cut_traces"]) == 20
    again = kpbit.run_trials(t, k=3, sweeps=100, trials=20, seed=7, threads=2)
    assert again["best_cuts"] == res["best_cuts"]

    base = kpbit.run_baseline(t, k=3, sweeps=100, trials=20, seed=1, penalty_a=4.0, penalty_b=1.0)
    assert base["n_spins"] == 9
    assert base["max_best"] == 3


def test_oracle_and_guard():
    k4 = kpbit.Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    cut, states = kpbit.brute_force_max_k_cut(k4, 3)
    assert cut == 5
    assert kpbit.cut_value(k4, 3, states) == 5
    with pytest.raises(ValueError):
        kpbit.brute_force_max_k_cut(kpbit.generate_random_graph(30, 0.3, 1), 3)


def test_probcurve_and_circuit():
    rows = kpbit.probcurve(3, 1.0, [0.0], 200000, seed=1)
    assert abs(rows[0]["p_retain_mc"] - 0.5) < 0.005
    lo, hi = kpbit.current_bounds()
    assert lo == pytest.approx(120e-6, rel=1e-6)
    assert hi == pytest.approx(310e-6, rel=1e-6)
    stats = kpbit.simulate_cycles(cycles=2000, seed=3)
    assert sum(stats["counts"]) == 2000
    assert kpbit.chi_square_uniform(stats["counts"])["pass"]
    with pytest.raises(kpbit.CircuitError):
        kpbit.simulate_cycles(current=100e-6, cycles=1)


@pytest.mark.skipif("KPBIT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_oracle(tmp_path):
    g = tmp_path / "tri.dimacs"
    g.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    out = subprocess.run([os.environ["KPBIT_CLI"], "oracle", "--graph", str(g), "--k", "3"],
                         check=True, capture_output=True, text=True).stdout
    assert json.loads(out)["optimum"] == 3
    bad = subprocess.run([os.environ["KPBIT_CLI"], "gen", "--nodes", "5", "--edge-prob", "1.5",
                          "--out", str(tmp_path / "x")], capture_output=True)
    assert bad.returncode == 2
