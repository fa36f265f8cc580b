"""Walkthrough: grouped leave-one-out evaluation and the tuple-size sweep.

Builds a synthetic separable dataset shaped like a small field study
(63 positives, 15 negatives, 2048 features), plans folds of 3 positives +
1 negative, and sweeps the bits-per-RAM parameter from 9 to 14.
"""

import tempfile
from pathlib import Path

import numpy as np

from wisardkit import (
    Dataset,
    FeatureVector,
    WisardConfig,
    emit_report,
    make_loo_plan,
    run_cross_validation,
    sweep_tuple_size,
)

rng = np.random.default_rng(2)
direction = rng.choice([-1.0, 1.0], size=2048)
samples = [
    FeatureVector(f"pos{i:02d}", 1, direction + 0.1 * rng.standard_normal(2048))
    for i in range(63)
]
samples += [
    FeatureVector(f"neg{i:02d}", 0, -direction + 0.1 * rng.standard_normal(2048))
    for i in range(15)
]
ds = Dataset(samples=tuple(samples))
print(f"dataset: {ds.class_counts()[1]} positives / {ds.class_counts()[0]} negatives, D={ds.d}")

plan = make_loo_plan(ds, pos_group=3, neg_group=1, seed=5)
print(f"plan: {len(plan.folds)} folds; fold 0 tests {plan.folds[0].test_ids} "
      f"and trains on the other {len(plan.folds[0].train_ids)} samples")

print()
print("== single cross-validation run ==")
result = run_cross_validation(ds, plan, WisardConfig(n=12, seed=5))
print(f"  pooled accuracy {result.pooled_accuracy:.4f} over {len(result.predictions)} predictions")
print(f"  confusion: {result.pooled_confusion}")

print()
print("== tuple-size sweep 9..14 ==")
rows = sweep_tuple_size(ds, plan, WisardConfig(n=9, seed=5), range(9, 15))
for row in rows:
    print(f"  n={row.n:>2}  accuracy {row.accuracy:.4f}")

with tempfile.TemporaryDirectory() as tmp:
    written = emit_report(tmp, sweep=rows, comparison={"wisard_tl": max(r.accuracy for r in rows)})
    for path in written:
        print()
        print(f"== {Path(path).name} ==")
        print(Path(path).read_text().strip())
