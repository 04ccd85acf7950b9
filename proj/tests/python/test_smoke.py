"""Smoke tests for the Python bindings."""

import json
import math

import pytest

aheft = pytest.importorskip("aheft")


def test_schedule_constants():
    assert aheft.sigma_zero(8, 8, 0.1) == pytest.approx(0.1 / 64)
    assert aheft.sigma_crit(8, 8, 0.5) == pytest.approx(0.0625)
    tc = aheft.theory_constants(8, 8, b=16.0)
    assert tc["w_max"] == 24
    assert tc["kappa_lb"] == pytest.approx(77.9531, rel=1e-4)


def test_ground_states_match_frozen_oracle():
    assert aheft.ground_energy("tfim", 4) == pytest.approx(-5.226251860, abs=1e-8)
    assert aheft.ground_energy("xxz", 4) == pytest.approx(-8.0, abs=1e-9)
    assert aheft.reference_gap("tfim", 8) == pytest.approx(0.789245, abs=1e-5)
    assert aheft.reference_gap("xxz", 6) == pytest.approx(1.0, abs=1e-10)


def test_circuit_and_gradient():
    n, l = 3, 2
    p = aheft.param_count("heft", n, l)
    assert p == l * (2 * n - 1)
    theta = [0.0] * p
    amps = aheft.statevector("heft", n, l, theta)
    assert abs(amps[0]) == pytest.approx(1.0)
    grad = aheft.gradient("heft", "tfim", n, l, theta)
    assert len(grad) == p
    # each RY sees its transverse field at the identity point
    for q in range(n):
        assert grad[q] == pytest.approx(-1.0, abs=1e-10)


def test_training_runs_and_descends():
    cfg = aheft.ScheduleConfig()
    cfg.total_steps = 60
    cfg.phase1_cap = 10  # reach the expansion phase within the short run
    out = aheft.train("adaptive", "tfim", 3, 2, cfg, seed=1)
    assert len(out["energy"]) == 61
    assert out["energy"][-1] < out["energy"][0]
    assert not out["failed"]


def test_welch_matches_frozen_oracle():
    r = aheft.welch_test([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
    assert r["t_stat"] == pytest.approx(-1.0)
    assert r["dof"] == pytest.approx(8.0)
    assert r["log10_p"] == pytest.approx(-0.460179577405584)
    assert r["cohens_d"] == pytest.approx(-0.632455532033676)


def test_experiment_json_schema():
    doc = json.loads(aheft.run_experiment_json("at7", "desk"))
    for key in ("schema_version", "experiment_id", "config", "theory_constants",
                "per_seed", "aggregates", "series", "meta"):
        assert key in doc
    gaps = doc["aggregates"]["reference_gap_tfim"]
    assert gaps[0] == pytest.approx(0.573223, abs=1e-5)
    assert math.isclose(gaps[-1], 0.789245, abs_tol=1e-5)
