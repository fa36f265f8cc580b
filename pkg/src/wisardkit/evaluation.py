"""Cross-validation runner, accuracy metrics, tuple-size sweep and CSV reports."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from wisardkit.dataset import Dataset, FoldPlan
from wisardkit.encoding import binarize_mean_threshold, pad_to_multiple
from wisardkit.perceptron import Perceptron
from wisardkit.wnn import WisardConfig, WisardModel, build_mapping

# canonical row order for comparison.csv
COMPARISON_SYSTEMS = ("wisard_tl", "wisard_no_tl", "perceptron_baseline")


class EvaluationError(RuntimeError):
    """Raised when a cross-validation run fails; names the offending fold."""


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total

    @classmethod
    def from_pairs(cls, preds, labels) -> "ConfusionMatrix":
        tp = fp = tn = fn = 0
        for pred, actual in zip(preds, labels):
            if actual == 1:
                if pred == 1:
                    tp += 1
                else:
                    fn += 1
            else:
                if pred == 1:
                    fp += 1
                else:
                    tn += 1
        return cls(tp=tp, fp=fp, tn=tn, fn=fn)


@dataclass(frozen=True)
class AccuracyResult:
    accuracy: float
    confusion: ConfusionMatrix


def accuracy(preds, labels) -> AccuracyResult:
    """Fraction of matching predictions plus the confusion matrix (positive = 1)."""
    preds = list(preds)
    labels = list(labels)
    if not preds or len(preds) != len(labels):
        raise ValueError(
            f"need equal-length non-empty sequences, got {len(preds)} predictions "
            f"and {len(labels)} labels"
        )
    confusion = ConfusionMatrix.from_pairs(preds, labels)
    return AccuracyResult(accuracy=confusion.accuracy, confusion=confusion)


@dataclass(frozen=True)
class Prediction:
    id: str
    fold_index: int
    predicted: int
    actual: int


@dataclass(frozen=True)
class FoldResult:
    fold_index: int
    accuracy: float
    confusion: ConfusionMatrix


@dataclass(frozen=True)
class CrossValResult:
    per_fold: tuple[FoldResult, ...]
    predictions: tuple[Prediction, ...]
    pooled_accuracy: float
    pooled_confusion: ConfusionMatrix


def _check_fold(fold, fold_index: int, all_ids: set[str]) -> None:
    test, train = set(fold.test_ids), set(fold.train_ids)
    if test & train:
        raise EvaluationError(
            f"fold {fold_index}: leakage, test ids also in training: {sorted(test & train)}"
        )
    if test | train != all_ids:
        raise EvaluationError(f"fold {fold_index}: test and train do not cover the dataset")


def run_cross_validation(ds: Dataset, plan: FoldPlan, cfg: WisardConfig) -> CrossValResult:
    """Train a fresh model per fold, classify its test samples, pool the results.

    Every sample is binarized by its own mean and padded to a multiple of
    cfg.n; the tuple mapping is seed-deterministic and therefore shared by
    all folds, while discriminator memory is rebuilt from scratch per fold
    (no leakage).  Folds are processed and aggregated in plan order so the
    output is deterministic.
    """
    by_id = ds.by_id()
    bits = {s.id: pad_to_multiple(binarize_mean_threshold(s.values), cfg.n) for s in ds.samples}
    length = next(iter(bits.values())).size
    mapping = build_mapping(length, cfg.n, cfg.seed, cfg.mapping_kind)

    all_ids = set(ds.ids)
    per_fold = []
    predictions = []
    for fold_index, fold in enumerate(plan.folds):
        _check_fold(fold, fold_index, all_ids)
        try:
            model = WisardModel(cfg, mapping)
            for sample_id in fold.train_ids:
                model.train(bits[sample_id], by_id[sample_id].label)
            fold_preds = []
            for sample_id in fold.test_ids:
                predicted = model.classify(bits[sample_id]).label
                actual = by_id[sample_id].label
                fold_preds.append((predicted, actual))
                predictions.append(
                    Prediction(id=sample_id, fold_index=fold_index, predicted=predicted, actual=actual)
                )
        except KeyError as exc:
            raise EvaluationError(f"fold {fold_index}: unknown sample id {exc}") from exc
        except ValueError as exc:
            raise EvaluationError(f"fold {fold_index}: {exc}") from exc
        result = accuracy([p for p, _ in fold_preds], [a for _, a in fold_preds])
        per_fold.append(
            FoldResult(fold_index=fold_index, accuracy=result.accuracy, confusion=result.confusion)
        )

    pooled = accuracy([p.predicted for p in predictions], [p.actual for p in predictions])
    return CrossValResult(
        per_fold=tuple(per_fold),
        predictions=tuple(predictions),
        pooled_accuracy=pooled.accuracy,
        pooled_confusion=pooled.confusion,
    )


@dataclass(frozen=True)
class SweepRow:
    n: int
    accuracy: float
    confusion: ConfusionMatrix


def sweep_tuple_size(ds: Dataset, plan: FoldPlan, base_cfg: WisardConfig, n_range=range(9, 15)) -> list[SweepRow]:
    """Re-run cross-validation for each tuple size, re-padding the retina per n.

    The fold plan is shared across the sweep; rows come back in ascending n.
    """
    sizes = sorted(set(int(n) for n in n_range))
    if not sizes:
        raise ValueError("tuple-size range is empty")
    if sizes[0] < 1:
        raise ValueError(f"tuple sizes must be >= 1, got {sizes[0]}")
    rows = []
    for n in sizes:
        result = run_cross_validation(ds, plan, base_cfg.with_n(n))
        rows.append(SweepRow(n=n, accuracy=result.pooled_accuracy, confusion=result.pooled_confusion))
    return rows


def run_perceptron_cross_validation(
    ds: Dataset,
    plan: FoldPlan,
    learning_rate: float = 0.01,
    epochs: int = 100,
    seed: int = 0,
) -> CrossValResult:
    """Evaluate the perceptron baseline under the same fold protocol.

    The perceptron consumes the raw real-valued features (no binarization);
    a fresh model is fitted per fold.
    """
    by_id = ds.by_id()
    all_ids = set(ds.ids)
    per_fold = []
    predictions = []
    for fold_index, fold in enumerate(plan.folds):
        _check_fold(fold, fold_index, all_ids)
        try:
            train_x = np.stack([by_id[i].values for i in fold.train_ids])
            train_y = np.array([by_id[i].label for i in fold.train_ids])
            model = Perceptron(learning_rate=learning_rate, epochs=epochs, seed=seed)
            model.fit(train_x, train_y)
            fold_preds = []
            for sample_id in fold.test_ids:
                predicted = int(model.predict(by_id[sample_id].values))
                actual = by_id[sample_id].label
                fold_preds.append((predicted, actual))
                predictions.append(
                    Prediction(id=sample_id, fold_index=fold_index, predicted=predicted, actual=actual)
                )
        except KeyError as exc:
            raise EvaluationError(f"fold {fold_index}: unknown sample id {exc}") from exc
        except ValueError as exc:
            raise EvaluationError(f"fold {fold_index}: {exc}") from exc
        result = accuracy([p for p, _ in fold_preds], [a for _, a in fold_preds])
        per_fold.append(
            FoldResult(fold_index=fold_index, accuracy=result.accuracy, confusion=result.confusion)
        )

    pooled = accuracy([p.predicted for p in predictions], [p.actual for p in predictions])
    return CrossValResult(
        per_fold=tuple(per_fold),
        predictions=tuple(predictions),
        pooled_accuracy=pooled.accuracy,
        pooled_confusion=pooled.confusion,
    )


def emit_report(destination, sweep=None, comparison=None) -> list[str]:
    """Write sweep.csv and/or comparison.csv under ``destination``.

    ``sweep`` is a sequence of SweepRow; ``comparison`` maps system name to
    accuracy.  Column and row order are fixed (sweep ascending by n,
    comparison in COMPARISON_SYSTEMS order) and accuracies print with 4
    decimals, so reruns are byte-identical.  Returns the paths written.
    """
    sweep = list(sweep) if sweep is not None else None
    if not sweep and not comparison:
        raise ValueError("nothing to report")
    os.makedirs(destination, exist_ok=True)
    written = []
    if sweep:
        path = os.path.join(destination, "sweep.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,accuracy,tp,fp,tn,fn\n")
            for row in sorted(sweep, key=lambda r: r.n):
                c = row.confusion
                fh.write(f"{row.n},{row.accuracy:.4f},{c.tp},{c.fp},{c.tn},{c.fn}\n")
        written.append(path)
    if comparison:
        known = [s for s in COMPARISON_SYSTEMS if s in comparison]
        extra = sorted(set(comparison) - set(COMPARISON_SYSTEMS))
        path = os.path.join(destination, "comparison.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("system,accuracy\n")
            for system in known + extra:
                fh.write(f"{system},{comparison[system]:.4f}\n")
        written.append(path)
    return written
