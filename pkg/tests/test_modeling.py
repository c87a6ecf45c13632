import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from recipenorm.errors import SingularDesign, TooFewSamples
from recipenorm.modeling import (REPORT_COLUMNS, accuracy, benchmark, fit_linear, fit_model,
                                 fit_ridge, kfold_eval, kfold_indices, write_report)


def test_identity_design():
    y = np.array([3.0, -1.0, 2.5])
    assert np.allclose(fit_linear(np.eye(3), y), y)


def test_linear_data_zero_residual():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(30, 4))
    y = X @ np.array([1.0, -2.0, 0.5, 3.0])
    assert np.max(np.abs(X @ fit_linear(X, y) - y)) < 1e-9


def test_five_point_ols():
    # y = 1.4 + 0.8 x solves the 2x2 normal equations [[5,10],[10,30]] b = [15,38]
    X = [[1, 0], [1, 1], [1, 2], [1, 3], [1, 4]]
    y = [1, 3, 2, 5, 4]
    want = [float(v) for v in oracles.normal_equations(X, y)]
    assert want == [1.4, 0.8]
    assert np.allclose(fit_linear(np.array(X, float), np.array(y, float)), want, atol=1e-9)


def test_ridge_three_by_two():
    # (X'X + I) = [[3,1],[1,3]], X'y = [4,5] -> b = [7/8, 11/8]
    X = [[1, 0], [0, 1], [1, 1]]
    y = [1, 2, 3]
    want = [float(v) for v in oracles.normal_equations(X, y, lam=1)]
    assert want == [7 / 8, 11 / 8]
    assert np.allclose(fit_ridge(np.array(X, float), np.array(y, float), 1.0), want, atol=1e-9)


def test_ridge_zero_equals_ols():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(40, 5))
    y = rng.normal(size=40)
    assert np.max(np.abs(fit_ridge(X, y, 0.0) - fit_linear(X, y))) <= 1e-8
    # a tiny positive penalty takes the normal-equations route and still agrees
    assert np.max(np.abs(fit_ridge(X, y, 1e-12) - fit_linear(X, y))) <= 1e-8


def test_ridge_shrinks():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(20, 3))
    y = rng.normal(size=20)
    assert np.linalg.norm(fit_ridge(X, y, 1e12)) < 1e-6


def test_singular_design():
    X = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
    with pytest.raises(SingularDesign):
        fit_linear(X, np.ones(3))
    fit_ridge(X, np.ones(3), 0.1)  # always solvable
    with pytest.raises(ValueError):
        fit_ridge(X, np.ones(3), -1)


def test_fixed_fixture_matches_oracle():
    rng = np.random.default_rng(3)
    X = np.round(rng.normal(size=(12, 3)), 2)
    y = np.round(rng.normal(size=12), 2)
    for lam in (0, 0.5, 3):
        want = np.array([float(v) for v in oracles.normal_equations(X.tolist(), y.tolist(), lam)])
        assert np.max(np.abs(fit_ridge(X, y, lam) - want)) <= 1e-9


def test_intercept_is_fitted():
    X = np.arange(10.0).reshape(-1, 1)
    m = fit_model("linear", X, 5 + 2 * X[:, 0])
    assert m.intercept == pytest.approx(5) and m.coef[0] == pytest.approx(2)


@given(st.integers(4, 300), st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_fold_partition(n, k, seed):
    if n < 2 * k:
        with pytest.raises(TooFewSamples):
            kfold_indices(n, k, seed)
        return
    folds = kfold_indices(n, k, seed)
    assert len(folds) == k
    allidx = np.concatenate(folds)
    assert sorted(allidx.tolist()) == list(range(n))
    sizes = [len(f) for f in folds]
    assert max(sizes) - min(sizes) <= 1


def test_folds_reproducible():
    a = kfold_indices(50, 5, 9)
    b = kfold_indices(50, 5, 9)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_accuracy_rule():
    y = np.array([0.0, 10.0, 100.0])
    # tolerances: max(1, 0) = 1, max(1, 1) = 1, max(1, 10) = 10
    assert accuracy(y, y + [1.0, 1.5, 10.0]) == pytest.approx(200 / 3)


@settings(max_examples=200)
@given(st.integers(0, 10_000), st.floats(0, 5), st.floats(0, 5), st.floats(0, 0.5), st.floats(0, 0.5))
def test_accuracy_monotone(seed, a1, a2, r1, r2):
    rng = np.random.default_rng(seed)
    y = rng.normal(scale=20, size=50)
    p = y + rng.normal(scale=3, size=50)
    lo_a, hi_a = sorted((a1, a2))
    lo_r, hi_r = sorted((r1, r2))
    assert accuracy(y, p, lo_a, lo_r) <= accuracy(y, p, hi_a, lo_r)
    assert accuracy(y, p, lo_a, lo_r) <= accuracy(y, p, lo_a, hi_r)
    assert 0 <= accuracy(y, p, lo_a, lo_r) <= 100


def test_constant_target_mean_baseline():
    X = np.random.default_rng(4).normal(size=(40, 2))
    row = kfold_eval(X, np.full(40, 7.0), "fat", k=5)
    assert row.mean_acc == 100 and row.median_acc == 100


def test_noiseless_linear_target():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(60, 3))
    y = 20 + X @ np.array([10.0, -5.0, 8.0])
    row = kfold_eval(X, y, "fat", "linear", k=6, seed=1)
    assert row.accuracy == 100
    assert row.mean_acc < 100


def test_too_few_samples():
    with pytest.raises(TooFewSamples):
        kfold_eval(np.zeros((5, 1)), np.zeros(5), "fat", k=3)


def test_ridge_model_runs():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(60, 3))
    y = X @ np.array([1.0, 2.0, 3.0]) + rng.normal(scale=0.01, size=60)
    assert kfold_eval(X, y, "fat", "ridge", k=5, eps_abs=0.1).accuracy == 100


def test_identical_corpora_identical_columns(tmp_path):
    rng = np.random.default_rng(7)
    vecs = {f"r{i}": rng.normal(size=3) for i in range(40)}
    targets = {k: {"fat": float(v.sum() * 5)} for k, v in vecs.items()}
    (row,) = benchmark(vecs, dict(vecs), targets, ["fat"], ["linear"], k=5, seed=3)
    assert row.acc_dh == row.acc_no_dh
    path = tmp_path / "r.csv"
    write_report([row], path)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == list(REPORT_COLUMNS)
    assert lines[1].startswith("embedding,fat,linear,")


def test_report_deterministic(tmp_path):
    rng = np.random.default_rng(8)
    dh = {f"r{i}": rng.normal(size=3) for i in range(30)}
    base = {k: rng.normal(size=3) for k in dh}
    targets = {k: {"fat": float(rng.uniform(0, 30))} for k in dh}
    out = []
    for name in ("a.csv", "b.csv"):
        rows = benchmark(dh, base, targets, ["fat"], ["linear", "ridge"], k=5, seed=4)
        write_report(rows, tmp_path / name)
        out.append((tmp_path / name).read_bytes())
    assert out[0] == out[1]
