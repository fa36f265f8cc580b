"""Binary retina encoding: mean-threshold binarization and tuple padding."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class EncodingError(ValueError):
    """Raised when a feature vector cannot be binarized."""


@dataclass(frozen=True)
class FeatureVector:
    """One sample: an id, an optional binary label and a real-valued vector.

    ``values`` is stored as a read-only float64 array; all vectors of one
    dataset must share the same dimension.
    """

    id: str
    label: int | None
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size == 0:
            raise EncodingError(f"sample {self.id!r}: values must be a non-empty 1-d vector")
        if self.label is not None and self.label not in (0, 1):
            raise EncodingError(f"sample {self.id!r}: label must be 0 or 1, got {self.label!r}")

    @property
    def dim(self) -> int:
        return int(self.values.size)


def binarize_mean_threshold(values) -> np.ndarray:
    """Binarize a real vector against its own arithmetic mean.

    A bit is 1 iff the component is strictly greater than the mean of the
    vector; ties and smaller values give 0, so a constant vector maps to
    all zeros.  The rule is invariant under positive affine maps a*v + b.

    Returns a uint8 array of the same length.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise EncodingError("cannot binarize an empty vector")
    finite = np.isfinite(v)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise EncodingError(f"non-finite value at index {bad}")
    return (v > v.mean()).astype(np.uint8)


def pad_to_multiple(bits: np.ndarray, n: int) -> np.ndarray:
    """Append the minimal number of 0-bits so ``len(bits)`` is a multiple of ``n``.

    Returns the input unchanged (same object) when the length already is a
    multiple; existing bits are never altered.
    """
    if n < 1:
        raise ValueError(f"tuple size must be >= 1, got {n}")
    bits = np.asarray(bits, dtype=np.uint8)
    remainder = bits.size % n
    if remainder == 0:
        return bits
    return np.concatenate([bits, np.zeros(n - remainder, dtype=np.uint8)])
