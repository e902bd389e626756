"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import oggn


def test_function_value_and_gradient():
    assert oggn.function_value("poly4", [1, 1, 1, 1]) == 21.8336
    g = oggn.function_gradient("poly4", [1, 1, 1, 1])
    assert g[0] == pytest.approx(9 * 0.87)
    assert g[3] == pytest.approx(2.9876 * 0.987)


def test_unknown_function_raises():
    with pytest.raises(oggn.OggnError):
        oggn.function_value("nope", [1.0])


def test_synth_data_shapes():
    features, targets = oggn.synth_data(n=32, low=1.0, high=50.0, seed=3)
    assert len(features) == 32 and len(targets) == 32
    assert all(len(row) == 4 for row in features)
    assert all(1.0 <= v < 50.0 for row in features for v in row)


def test_oracle_train_eval_grad(tmp_path):
    features, targets = oggn.synth_data(n=400, low=1.0, high=100.0, seed=5)
    model = str(tmp_path / "model.json")
    info = oggn.train_oracle(features, targets, model, hidden=[16, 16], epochs=40, seed=2)
    assert info["final_train_mse"] < 1e4

    test_f, test_t = oggn.synth_data(n=100, low=1.0, high=100.0, seed=6)
    metrics = oggn.eval_oracle(model, test_f, test_t)
    assert metrics["mean_rel_err"] < 0.2

    value, grad = oggn.oracle_value_grad(model, [20.0, 30.0, 40.0, 50.0])
    assert math.isfinite(value)
    assert len(grad) == 4


def test_invert_analytic_reaches_target():
    r = oggn.invert("poly4", 150.0, epochs=500, seed=1)
    assert r["stop_reason"] in ("tolerance", "max_epochs")
    best = min(abs(t - 150.0) for t in r["true_targets"])
    assert best / 150.0 < 0.05


def test_invert_respects_fix_and_range():
    r = oggn.invert(
        "poly4",
        300.0,
        fix={3: 25.0},
        range={0: (1.0, 100.0, 20.0, 10.0)},
        epochs=400,
        seed=2,
    )
    for row in r["features"]:
        assert row[3] == 25.0


def test_solve_system_residuals():
    r = oggn.solve_system("demo3", seed=1)
    norms = [math.sqrt(sum(q * q for q in row)) for row in r["residuals"]]
    assert min(norms) < 0.1
    # Reported per-row norms agree with the per-equation residuals.
    for norm, reported in zip(norms, r["true_targets"]):
        assert norm == pytest.approx(reported, abs=1e-9)
