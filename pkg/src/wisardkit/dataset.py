"""Feature-file loading and grouped leave-one-out fold planning.

Feature files are UTF-8 CSV with LF line endings and a normative header
``id,label,f0,...,f{D-1}``.  ``label`` is 0 or 1, features are decimal
floats round-trippable at full precision.  Error messages refer to data
rows by their 1-based position below the header.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from wisardkit.encoding import FeatureVector


class FeatureFileError(ValueError):
    """Raised when a feature file is malformed."""


class FoldPlanError(ValueError):
    """Raised when a leave-one-out plan cannot be constructed."""


@dataclass(frozen=True)
class Dataset:
    """Validated, labeled samples of one shared dimension."""

    samples: tuple[FeatureVector, ...]

    def __post_init__(self):
        if not self.samples:
            raise ValueError("dataset has no samples")
        dims = {s.dim for s in self.samples}
        if len(dims) != 1:
            raise ValueError(f"samples have mixed dimensions: {sorted(dims)}")
        ids = [s.id for s in self.samples]
        if len(set(ids)) != len(ids):
            raise ValueError("sample ids are not unique")
        if any(s.label is None for s in self.samples):
            raise ValueError("every sample must be labeled")

    @property
    def d(self) -> int:
        return self.samples[0].dim

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.samples)

    def class_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self.samples:
            counts[s.label] = counts.get(s.label, 0) + 1
        return counts

    def by_id(self) -> dict[str, FeatureVector]:
        return {s.id: s for s in self.samples}

    def ids_with_label(self, label: int) -> list[str]:
        return [s.id for s in self.samples if s.label == label]


def parse_feature_rows(text: str, path="feature file") -> list[FeatureVector]:
    """Parse feature-file text into samples; empty files yield an empty list."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FeatureFileError(f"{path}: missing header")

    header = lines[0].split(",")
    if len(header) < 3 or header[0] != "id" or header[1] != "label":
        raise FeatureFileError(f"{path}: malformed header {lines[0]!r}")
    d = len(header) - 2
    expected = [f"f{i}" for i in range(d)]
    if header[2:] != expected:
        raise FeatureFileError(f"{path}: feature columns must be f0..f{d - 1}")

    samples: list[FeatureVector] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines[1:], start=1):
        fields = line.split(",")
        if len(fields) != d + 2:
            raise FeatureFileError(
                f"{path}: line {line_no}: expected {d} features, found {max(len(fields) - 2, 0)}"
            )
        sample_id = fields[0]
        if sample_id in seen:
            raise FeatureFileError(f"{path}: line {line_no}: duplicate id {sample_id!r}")
        seen.add(sample_id)
        if fields[1] not in ("0", "1"):
            raise FeatureFileError(
                f"{path}: line {line_no}: non-binary label {fields[1]!r}"
            )
        label = int(fields[1])
        try:
            values = np.array([float(raw) for raw in fields[2:]], dtype=np.float64)
        except ValueError as exc:
            raise FeatureFileError(
                f"{path}: line {line_no}: unparseable number ({exc})"
            ) from exc
        if not np.isfinite(values).all():
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise FeatureFileError(
                f"{path}: line {line_no}: non-finite value in feature f{bad}"
            )
        samples.append(FeatureVector(id=sample_id, label=label, values=values))
    return samples


def load_feature_file(path) -> Dataset:
    """Load and validate a feature file into a Dataset."""
    with open(path, "r", encoding="utf-8") as fh:
        samples = parse_feature_rows(fh.read(), path=str(path))
    if not samples:
        raise FeatureFileError(f"{path}: no samples")
    try:
        return Dataset(samples=tuple(samples))
    except ValueError as exc:
        raise FeatureFileError(f"{path}: {exc}") from exc


def write_feature_file(path, samples) -> None:
    """Write samples in the feature-file format (full float precision)."""
    samples = list(samples)
    if not samples:
        raise ValueError("refusing to write a feature file with no samples")
    d = samples[0].dim
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("id,label," + ",".join(f"f{i}" for i in range(d)) + "\n")
        for s in samples:
            label = 0 if s.label is None else s.label
            fh.write(f"{s.id},{label}," + ",".join(repr(float(x)) for x in s.values) + "\n")


@dataclass(frozen=True)
class Fold:
    test_ids: tuple[str, ...]
    train_ids: tuple[str, ...]


@dataclass(frozen=True)
class FoldPlan:
    """Deterministic grouped leave-one-out fold assignments."""

    folds: tuple[Fold, ...]
    seed: int
    pos_group: int
    neg_group: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "pos_group": self.pos_group,
                "neg_group": self.neg_group,
                "folds": [
                    {"test_ids": list(f.test_ids), "train_ids": list(f.train_ids)}
                    for f in self.folds
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "FoldPlan":
        raw = json.loads(text)
        return cls(
            folds=tuple(
                Fold(test_ids=tuple(f["test_ids"]), train_ids=tuple(f["train_ids"]))
                for f in raw["folds"]
            ),
            seed=raw["seed"],
            pos_group=raw["pos_group"],
            neg_group=raw["neg_group"],
        )


def make_loo_plan(ds: Dataset, pos_group: int = 3, neg_group: int = 1, seed: int = 0) -> FoldPlan:
    """Build the grouped leave-one-out plan.

    The fold count is bound by the negatives: floor(#neg / neg_group) folds,
    each testing ``neg_group`` fresh negatives plus a disjoint group of
    ``pos_group`` fresh positives (both classes shuffled by ``seed``).
    Surplus samples of either class stay in training for every fold.
    """
    if pos_group < 1 or neg_group < 1:
        raise FoldPlanError("group sizes must be >= 1")
    pos_ids = ds.ids_with_label(1)
    neg_ids = ds.ids_with_label(0)
    if len(pos_ids) < pos_group:
        raise FoldPlanError(
            f"need at least {pos_group} positives, dataset has {len(pos_ids)}"
        )
    if len(neg_ids) < neg_group:
        raise FoldPlanError(
            f"need at least {neg_group} negatives, dataset has {len(neg_ids)}"
        )
    fold_count = len(neg_ids) // neg_group
    if fold_count * pos_group > len(pos_ids):
        raise FoldPlanError(
            f"{fold_count} folds need {fold_count * pos_group} distinct positives, "
            f"dataset has {len(pos_ids)}"
        )

    rng = np.random.default_rng(seed)
    pos_shuffled = [pos_ids[i] for i in rng.permutation(len(pos_ids))]
    neg_shuffled = [neg_ids[i] for i in rng.permutation(len(neg_ids))]

    all_ids = ds.ids
    folds = []
    for i in range(fold_count):
        test = tuple(
            pos_shuffled[i * pos_group : (i + 1) * pos_group]
            + neg_shuffled[i * neg_group : (i + 1) * neg_group]
        )
        test_set = set(test)
        train = tuple(x for x in all_ids if x not in test_set)
        if not train:
            raise FoldPlanError(f"fold {i} has an empty training set")
        folds.append(Fold(test_ids=test, train_ids=train))
    return FoldPlan(folds=tuple(folds), seed=seed, pos_group=pos_group, neg_group=neg_group)
