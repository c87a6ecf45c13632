"""
Does the weighting help a regression?
=====================================

Targets are built as a linear function of the mass-weighted vector, so a
linear model on those vectors should be near perfect while the plain average
loses information.
"""
import numpy as np

from recipenorm.embeddings import recipe_vector_baseline, recipe_vector_dh
from recipenorm.modeling import benchmark, kfold_eval

rng = np.random.default_rng(1)
E = rng.normal(size=(40, 8))          # 40 ingredient vectors
w, b = rng.normal(size=8) * 10, 50.0

dh, base, targets = {}, {}, {}
for i in range(400):
    idx = rng.choice(40, size=rng.integers(2, 7), replace=False)
    grams = rng.lognormal(4, 1, size=len(idx))
    pairs = list(zip(grams, E[idx]))
    key = f"r{i:03d}"
    dh[key] = recipe_vector_dh(pairs)
    base[key] = recipe_vector_baseline(pairs)
    targets[key] = {"energy": b + dh[key] @ w}

for row in benchmark(dh, base, targets, ["energy"], ["linear", "ridge"], "demo", k=10):
    print(f"{row.model:7} acc_dh={row.acc_dh:6.2f}  acc_no_dh={row.acc_no_dh:6.2f}")

# per-fold detail for one run
keys = sorted(dh)
X = np.array([dh[k] for k in keys])
y = np.array([targets[k]["energy"] for k in keys])
print(kfold_eval(X, y, "energy", "linear", k=5).fold_acc)
