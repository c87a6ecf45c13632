"""Regression harness: least squares, ridge, k-fold CV and tolerance accuracy.

Models are fitted with an intercept by centring the training fold, so the
coefficient routines themselves work on plain ``X @ beta`` problems.
"""
from __future__ import annotations

import csv
import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import SingularDesign, TooFewSamples

log = logging.getLogger(__name__)

EPS_ABS = 1.0
EPS_REL = 0.10
DEFAULT_K = 10
RIDGE_GRID = (0.0, 0.01, 0.1, 1.0, 10.0)
INNER_K = 3
MODELS = ("linear", "ridge")


def fit_linear(X, y):
    """Least-squares coefficients; raises SingularDesign if X is rank deficient."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise SingularDesign(f"design matrix has rank {rank} < {X.shape[1]} columns")
    return beta


def fit_ridge(X, y, lam):
    """Minimise ||X b - y||^2 + lam ||b||^2 via the regularised normal equations."""
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if lam == 0:
        return fit_linear(X, y)
    d = X.shape[1]
    return np.linalg.solve(X.T @ X + lam * np.eye(d), X.T @ y)


def accuracy(y_true, y_pred, eps_abs=EPS_ABS, eps_rel=EPS_REL):
    """Percent of predictions within max(eps_abs, eps_rel * |y|) of the truth."""
    y_true = np.asarray(y_true, dtype=float)
    y_pred = np.asarray(y_pred, dtype=float)
    if y_true.size == 0:
        return 0.0
    tol = np.maximum(eps_abs, eps_rel * np.abs(y_true))
    return 100.0 * float(np.mean(np.abs(y_pred - y_true) <= tol))


def kfold_indices(n, k, seed):
    """Shuffled partition of range(n) into k folds whose sizes differ by at most 1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 2 * k:
        raise TooFewSamples(f"need at least {2 * k} samples for k={k}, got {n}")
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(f) for f in np.array_split(perm, k)]


@dataclass
class LinearModel:
    """Fitted affine predictor y = intercept + x @ coef."""
    coef: np.ndarray
    intercept: float
    lam: float = 0.0

    def predict(self, X):
        return self.intercept + np.asarray(X, dtype=float) @ self.coef


def _fit_centred(X, y, lam):
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    beta = fit_ridge(X - x_mean, y - y_mean, lam)
    return LinearModel(beta, float(y_mean - x_mean @ beta), lam)


def _select_lambda(X, y, seed, grid=RIDGE_GRID, inner_k=INNER_K):
    """Pick the grid value with the lowest inner-CV squared error (ties: first)."""
    if len(y) < 2 * inner_k:
        return grid[-1]
    folds = kfold_indices(len(y), inner_k, seed)
    best, best_err = grid[-1], np.inf
    for lam in grid:
        err = 0.0
        try:
            for test in folds:
                train = np.setdiff1d(np.arange(len(y)), test)
                m = _fit_centred(X[train], y[train], lam)
                err += float(np.sum((m.predict(X[test]) - y[test]) ** 2))
        except SingularDesign:
            continue
        if err < best_err:
            best, best_err = lam, err
    return best


def fit_model(name, X, y, seed=0):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if name == "linear":
        return _fit_centred(X, y, 0.0)
    if name == "ridge":
        return _fit_centred(X, y, _select_lambda(X, y, seed))
    if name.startswith("ridge:"):
        return _fit_centred(X, y, float(name.split(":", 1)[1]))
    raise ValueError(f"unknown model {name!r}")


@dataclass
class EvalRow:
    target: str
    model: str
    accuracy: float
    mean_acc: float
    median_acc: float
    k: int
    n: int
    eps_abs: float
    eps_rel: float
    fold_acc: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def kfold_eval(X, y, target, model="linear", k=DEFAULT_K, eps_abs=EPS_ABS,
               eps_rel=EPS_REL, seed=0) -> EvalRow:
    """Cross-validated accuracy of one model on one target, with mean/median floors.

    Folds are scored separately and averaged. A rank-deficient training fold
    falls back to a tiny ridge penalty and records a warning.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise ValueError("features and targets must be finite")
    n = len(y)
    folds = kfold_indices(n, k, seed)
    accs, means, medians, warnings = [], [], [], []
    for f, test in enumerate(folds):
        train = np.setdiff1d(np.arange(n), test)
        try:
            m = fit_model(model, X[train], y[train], seed=seed + 1 + f)
        except SingularDesign as exc:
            warnings.append(f"fold {f}: {exc}; using ridge 1e-8")
            m = fit_model("ridge:1e-8", X[train], y[train])
        accs.append(accuracy(y[test], m.predict(X[test]), eps_abs, eps_rel))
        y_tr = y[train]
        means.append(accuracy(y[test], np.full(len(test), y_tr.mean()), eps_abs, eps_rel))
        medians.append(accuracy(y[test], np.full(len(test), np.median(y_tr)), eps_abs, eps_rel))
    return EvalRow(target, model, float(np.mean(accs)), float(np.mean(means)),
                   float(np.mean(medians)), k, n, eps_abs, eps_rel, accs, warnings)


@dataclass
class BenchmarkRow:
    embedding: str
    target: str
    model: str
    acc_dh: float
    mean_acc: float
    median_acc: float
    acc_no_dh: float
    n: int
    k: int
    eps_abs: float
    eps_rel: float
    seed: int


REPORT_COLUMNS = tuple(BenchmarkRow.__dataclass_fields__)


def align(dh: dict, base: dict, targets: dict, nutrient):
    """Keys present in both corpora with a finite target, sorted."""
    keys = sorted(k for k in dh.keys() & base.keys()
                  if k in targets and targets[k].get(nutrient) is not None
                  and np.isfinite(targets[k][nutrient]))
    X_dh = np.array([dh[k] for k in keys], dtype=float)
    X_base = np.array([base[k] for k in keys], dtype=float)
    y = np.array([targets[k][nutrient] for k in keys], dtype=float)
    return keys, X_dh, X_base, y


def benchmark(dh: dict, base: dict, targets: dict, nutrients, models=("linear",),
              embedding="embedding", k=DEFAULT_K, eps_abs=EPS_ABS, eps_rel=EPS_REL,
              seed=0) -> list[BenchmarkRow]:
    """DH vs non-DH comparison per (nutrient, model).

    ``dh`` and ``base`` map recipe key -> vector, ``targets`` maps recipe key ->
    {nutrient: value}. Both corpora are scored on the same folds.
    """
    rows = []
    for nutrient in nutrients:
        keys, X_dh, X_base, y = align(dh, base, targets, nutrient)
        for model in models:
            with_dh = kfold_eval(X_dh, y, nutrient, model, k, eps_abs, eps_rel, seed)
            no_dh = kfold_eval(X_base, y, nutrient, model, k, eps_abs, eps_rel, seed)
            for w in with_dh.warnings + no_dh.warnings:
                log.warning("%s/%s: %s", nutrient, model, w)
            rows.append(BenchmarkRow(embedding, nutrient, model, with_dh.accuracy,
                                     with_dh.mean_acc, with_dh.median_acc,
                                     no_dh.accuracy, len(keys), k, eps_abs, eps_rel, seed))
    return rows


def write_report(rows, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for row in rows:
            vals = asdict(row)
            w.writerow([f"{v:.4f}" if isinstance(v, float) else v
                        for v in (vals[c] for c in REPORT_COLUMNS)])
