"""End-to-end smoke tests for the python module.

These exercise the bound surface against numpy-side expectations; the heavy
numerical verification lives in the C++ test suites.
"""

import json
import math

import numpy as np
import pytest

import mvrkm


def test_generators_shapes_and_values():
    sine = mvrkm.generate_sine(200, freq=2.0, amplitude=3.0, phase=0.5, dt=0.01)
    assert sine.shape == (200, 1)
    expected = 3.0 * np.sin(2.0 * math.pi * 2.0 * np.arange(200) * 0.01 + 0.5)
    assert np.max(np.abs(sine[:, 0] - expected)) <= 1e-12

    total = mvrkm.generate_sum_sines(
        100, amplitudes=[1.0, 0.2], freqs=[1.0, 20.0], phases=[0.0, 0.0]
    )
    parts = mvrkm.generate_sine(100, freq=1.0) + mvrkm.generate_sine(
        100, freq=20.0, amplitude=0.2
    )
    assert total.shape == (100, 1)
    assert np.max(np.abs(total - parts)) <= 1e-12

    lorenz = mvrkm.generate_lorenz(steps=50)
    assert lorenz.shape == (50, 3)
    assert np.array_equal(lorenz[0], [1.0, -1.0, 1.05])


def test_generate_lorenz_is_deterministic():
    a = mvrkm.generate_lorenz(steps=200)
    b = mvrkm.generate_lorenz(steps=200)
    assert np.array_equal(a, b)


def test_lag_embed_matches_manual_windows():
    values = np.arange(12, dtype=float).reshape(-1, 1)
    X, Y = mvrkm.lag_embed(values, p=2)
    assert X.shape == (9, 3)
    assert Y.shape == (9, 1)
    # Rows hold the newest point first; the target is the next point.
    assert np.array_equal(X[0], [2.0, 1.0, 0.0])
    assert np.array_equal(Y[0], [3.0])
    assert np.array_equal(X[-1], [10.0, 9.0, 8.0])
    assert np.array_equal(Y[-1], [11.0])


def test_train_forecast_sine():
    values = mvrkm.generate_sine(500)
    config = json.loads(mvrkm.default_config("mvrkm"))
    assert config["model"] == "mvrkm"
    config.update(p=50, s=30)

    model = mvrkm.Model.train(values[:400], json.dumps(config))
    assert model.kind == "mvrkm"
    assert model.lag == 50
    assert model.dim == 1

    out = model.forecast(100, truth=values[400:])
    assert out["predictions"].shape == (100, 1)
    assert out["mse"] is not None
    assert out["mse"] <= 1e-6
    assert out["mse"] == pytest.approx(mvrkm.mse(out["predictions"], values[400:]))


def test_forecast_without_truth_has_no_mse():
    values = mvrkm.generate_sine(300)
    config = json.loads(mvrkm.default_config("mvrkm"))
    config.update(p=20, s=15)
    model = mvrkm.Model.train(values, json.dumps(config))
    out = model.forecast(10)
    assert out["predictions"].shape == (10, 1)
    assert out["mse"] is None


def test_preimage_override():
    values = mvrkm.generate_sine(400)
    config = json.loads(mvrkm.default_config("mvrkm"))
    config.update(p=30, s=25, ky="rbf:0.2")
    model = mvrkm.Model.train(values[:320], json.dumps(config))

    smoothed = model.forecast(80, truth=values[320:], preimage="smoother:5")
    assert smoothed["mse"] <= 1e-2
    # The smoother averages training targets, so predictions stay inside
    # their range.
    assert smoothed["predictions"].max() <= values[:320].max() + 1e-12
    assert smoothed["predictions"].min() >= values[:320].min() - 1e-12


def test_save_load_round_trip(tmp_path):
    values = mvrkm.generate_sine(300)
    config = json.loads(mvrkm.default_config("mvrkm"))
    config.update(p=25, s=20)
    model = mvrkm.Model.train(values, json.dumps(config))

    path = str(tmp_path / "model.bin")
    model.save(path)
    back = mvrkm.Model.load(path)
    assert back.kind == model.kind
    assert back.lag == model.lag

    a = model.forecast(40)["predictions"]
    b = back.forecast(40)["predictions"]
    assert np.array_equal(a, b)


def test_lssvm_train_and_forecast():
    values = mvrkm.generate_sine(400)
    config = json.loads(mvrkm.default_config("lssvm"))
    config.update(p=30, gamma=1e6)
    model = mvrkm.Model.train(values[:320], json.dumps(config))
    assert model.kind == "lssvm"

    out = model.forecast(80, truth=values[320:])
    assert out["mse"] <= 1e-3
    with pytest.raises(ValueError):
        model.forecast(10, preimage="linear")


def test_bad_config_is_rejected():
    values = mvrkm.generate_sine(100)
    with pytest.raises(RuntimeError):
        mvrkm.Model.train(values, "not json")
    with pytest.raises(RuntimeError):
        mvrkm.Model.train(values, json.dumps({"model": "cubist"}))


def test_grid_search_ranks_and_is_deterministic():
    values = mvrkm.generate_sine(400)
    grid = json.dumps(
        {"lags": [10, 40], "sigmas_x": [0.5, 1.0], "components": [10, 20]}
    )
    first = mvrkm.grid_search(values, grid, kind="mvrkm", jobs=1)
    second = mvrkm.grid_search(values, grid, kind="mvrkm", jobs=2)

    assert len(first) == 8
    assert [t["key"] for t in first] == [t["key"] for t in second]
    assert [t["validation_mse"] for t in first] == [
        t["validation_mse"] for t in second
    ]
    assert first[0]["ok"]
    assert first[0]["validation_mse"] <= first[-1]["validation_mse"] or not first[-1]["ok"]

    # The winning config can be trained directly.
    model = mvrkm.Model.train(values, first[0]["config"])
    assert model.kind == "mvrkm"
