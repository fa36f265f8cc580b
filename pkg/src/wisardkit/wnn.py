"""RAM-based weightless neural network (WiSARD).

A discriminator is a bank of K RAM neurons sharing one tuple mapping over a
binary retina of L bits (L = K * n).  Training writes into the RAM location
addressed by each tuple of the input pattern; the response to a pattern is
the number of RAMs whose addressed location holds anything (the "fired"
count).  One discriminator is kept per class.

Two decision modes are provided:

* ``threshold`` -- only the positive-class discriminator is consulted; the
  pattern is positive when its fired count strictly exceeds a cutoff derived
  from ``threshold_fraction``.
* ``argmax`` -- the class with the highest fired count wins, ties breaking
  toward the smaller label (for the binary case: toward the negative class).

RAM contents are sparse ``address -> write count`` maps, so memory grows
with training volume rather than with 2**n.  A bleach level can be passed to
``response``/``classify``; the default of 0 means plain presence semantics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

POSITIVE_LABEL = 1

MAPPING_KINDS = ("random", "linear")
DECISION_MODES = ("threshold", "argmax")

_FORMAT_LINE = "wisard-model v1"


class ModelFormatError(ValueError):
    """A model file does not conform to the serialization format."""


class ModelVersionError(ModelFormatError):
    """The file declares a format version this library does not read."""


class ModelTruncatedError(ModelFormatError):
    """The file ends before the serialized model is complete."""


class ModelInvariantError(ModelFormatError):
    """The file parsed but violates a structural invariant."""


@dataclass(frozen=True)
class WisardConfig:
    """Static configuration of a WiSARD machine.

    ``threshold_fraction`` is the fraction of the K RAMs that must fire for
    a positive decision in threshold mode.
    """

    n: int
    seed: int = 0
    mapping_kind: str = "random"
    decision_mode: str = "threshold"
    threshold_fraction: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"tuple size must be >= 1, got {self.n}")
        if self.mapping_kind not in MAPPING_KINDS:
            raise ValueError(f"unknown mapping kind {self.mapping_kind!r}")
        if self.decision_mode not in DECISION_MODES:
            raise ValueError(f"unknown decision mode {self.decision_mode!r}")
        if not 0.0 <= self.threshold_fraction <= 1.0:
            raise ValueError(
                f"threshold_fraction must be in [0, 1], got {self.threshold_fraction}"
            )

    def with_n(self, n: int) -> "WisardConfig":
        return replace(self, n=n)


@dataclass(frozen=True)
class TupleMapping:
    """Fixed assignment of retina bit positions to RAM address lines.

    ``tuples`` has shape (K, n); row k lists the n retina indices wired to
    RAM k, first index = most significant address bit.  The K*n indices form
    an exact permutation of 0..length-1.
    """

    length: int
    n: int
    tuples: np.ndarray = field(repr=False)

    def __post_init__(self):
        tuples = np.asarray(self.tuples, dtype=np.int64)
        tuples.setflags(write=False)
        object.__setattr__(self, "tuples", tuples)
        if self.n < 1 or self.length < 1 or self.length % self.n != 0:
            raise ValueError(f"tuple size {self.n} must divide retina length {self.length}")
        if tuples.shape != (self.length // self.n, self.n):
            raise ValueError(f"tuple table has shape {tuples.shape}, expected ({self.length // self.n}, {self.n})")
        flat = np.sort(tuples.ravel())
        if not np.array_equal(flat, np.arange(self.length)):
            raise ValueError("tuple indices must form a permutation of 0..length-1")

    @property
    def k(self) -> int:
        """Number of RAMs (= length / n)."""
        return self.length // self.n

    def addresses(self, bits: np.ndarray) -> np.ndarray:
        """Read the K RAM addresses encoded by a retina pattern."""
        bits = np.asarray(bits)
        if bits.shape != (self.length,):
            raise ValueError(
                f"pattern length {bits.shape} does not match retina length {self.length}"
            )
        weights = 1 << np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return bits[self.tuples].astype(np.int64) @ weights


def build_mapping(length: int, n: int, seed: int = 0, kind: str = "random") -> TupleMapping:
    """Build the retina-to-RAM wiring for a padded retina of ``length`` bits.

    ``linear`` wires consecutive runs of n bits to successive RAMs;
    ``random`` applies a seed-deterministic uniform shuffle of the bit
    positions first.  The result is always serialized with the model, so
    reproducibility never depends on the random generator itself.
    """
    if n < 1:
        raise ValueError(f"tuple size must be >= 1, got {n}")
    if length < 1 or length % n != 0:
        raise ValueError(f"tuple size {n} does not divide retina length {length}")
    if kind not in MAPPING_KINDS:
        raise ValueError(f"unknown mapping kind {kind!r}")
    if kind == "linear":
        order = np.arange(length, dtype=np.int64)
    else:
        order = np.random.default_rng(seed).permutation(length).astype(np.int64)
    return TupleMapping(length=length, n=n, tuples=order.reshape(length // n, n))


@dataclass(frozen=True)
class Response:
    """Per-class fired-RAM counts for one pattern."""

    fired: dict[int, int]
    k_total: int

    def count(self, label: int) -> int:
        """Fired count for ``label`` (0 for a class never trained)."""
        return self.fired.get(label, 0)


@dataclass(frozen=True)
class Classification:
    """A decision plus the fired counts that produced it."""

    label: int
    fired: dict[int, int]
    k_total: int


class WisardModel:
    """A multi-discriminator WiSARD machine.

    Training mutates the model and needs exclusive access; once training is
    done the model is effectively immutable and ``response``/``classify``
    may run concurrently.
    """

    def __init__(self, config: WisardConfig, mapping: TupleMapping):
        if mapping.n != config.n:
            raise ValueError(f"mapping built for n={mapping.n}, config has n={config.n}")
        self.config = config
        self.mapping = mapping
        # label -> K sparse RAMs, each an address -> write-count map
        self.discriminators: dict[int, list[dict[int, int]]] = {}
        self.trained_counts: dict[int, int] = {}

    @classmethod
    def create(cls, length: int, config: WisardConfig) -> "WisardModel":
        """Build mapping and model in one go for a padded retina of ``length``."""
        mapping = build_mapping(length, config.n, config.seed, config.mapping_kind)
        return cls(config, mapping)

    @property
    def classes(self) -> list[int]:
        return sorted(self.discriminators)

    def train(self, bits: np.ndarray, label: int) -> "WisardModel":
        """Store the pattern in the RAMs of ``label``'s discriminator.

        Creates the discriminator on first sight of a class.  Each of the K
        addressed locations has its write count incremented by one.
        """
        addresses = self.mapping.addresses(bits)
        label = int(label)
        rams = self.discriminators.get(label)
        if rams is None:
            rams = [{} for _ in range(self.mapping.k)]
            self.discriminators[label] = rams
            self.trained_counts[label] = 0
        for ram, address in zip(rams, addresses):
            address = int(address)
            ram[address] = ram.get(address, 0) + 1
        self.trained_counts[label] += 1
        return self

    def response(self, bits: np.ndarray, bleach: int = 0) -> Response:
        """Count, per class, the RAMs whose addressed write count exceeds ``bleach``."""
        addresses = self.mapping.addresses(bits)
        fired = {
            label: sum(1 for ram, a in zip(rams, addresses) if ram.get(int(a), 0) > bleach)
            for label, rams in self.discriminators.items()
        }
        return Response(fired=fired, k_total=self.mapping.k)

    def decision_cutoff(self) -> int:
        """Integer fired-count cutoff for threshold mode (decision is fired > cutoff).

        The cutoff is ceil(threshold_fraction * K), capped at K - 1 so that a
        fully saturated response (fired = K) is always positive, including at
        threshold_fraction = 1.0.
        """
        k = self.mapping.k
        return min(math.ceil(self.config.threshold_fraction * k), k - 1)

    def classify(self, bits: np.ndarray, bleach: int = 0) -> Classification:
        """Decide a label for the pattern under the configured decision mode."""
        resp = self.response(bits, bleach=bleach)
        if self.config.decision_mode == "threshold":
            if POSITIVE_LABEL not in self.discriminators:
                raise ValueError(
                    "threshold mode needs a trained positive-class discriminator"
                )
            positive = resp.count(POSITIVE_LABEL) > self.decision_cutoff()
            label = POSITIVE_LABEL if positive else 0
        else:
            if not self.discriminators:
                raise ValueError("cannot classify with an untrained model")
            # max fired; ties break toward the smaller label (negative class)
            label = min(self.classes, key=lambda c: (-resp.count(c), c))
        return Classification(label=label, fired=resp.fired, k_total=resp.k_total)

    # -- serialization -----------------------------------------------------
    #
    # Versioned line-oriented text format.  Field order, class order
    # (ascending label), RAM order and ascending-address content order are
    # all normative so identical models always save byte-identically.

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            _FORMAT_LINE,
            f"n {cfg.n}",
            f"seed {cfg.seed}",
            f"mapping_kind {cfg.mapping_kind}",
            f"decision_mode {cfg.decision_mode}",
            f"threshold_fraction {cfg.threshold_fraction!r}",
            f"length {self.mapping.length}",
            f"rams {self.mapping.k}",
            "tuples",
        ]
        lines.extend(" ".join(str(i) for i in row) for row in self.mapping.tuples)
        lines.append(f"classes {len(self.discriminators)}")
        for label in self.classes:
            lines.append(f"class {label} trained {self.trained_counts.get(label, 0)}")
            for index, ram in enumerate(self.discriminators[label]):
                cells = " ".join(f"{a}:{ram[a]}" for a in sorted(ram))
                lines.append(f"ram {index} {cells}".rstrip())
        lines.append("end")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "WisardModel":
        reader = _LineReader(text)
        header = reader.next("format header")
        if header != _FORMAT_LINE:
            if header.startswith("wisard-model"):
                raise ModelVersionError(f"unsupported model format version: {header!r}")
            raise ModelFormatError("not a wisard model file")

        n = reader.int_field("n")
        seed = reader.int_field("seed")
        mapping_kind = reader.str_field("mapping_kind")
        decision_mode = reader.str_field("decision_mode")
        threshold_fraction = reader.float_field("threshold_fraction")
        length = reader.int_field("length")
        k = reader.int_field("rams")

        try:
            config = WisardConfig(
                n=n,
                seed=seed,
                mapping_kind=mapping_kind,
                decision_mode=decision_mode,
                threshold_fraction=threshold_fraction,
            )
        except ValueError as exc:
            raise ModelInvariantError(str(exc)) from exc
        if length % n != 0 or length // n != k:
            raise ModelInvariantError(
                f"rams count {k} inconsistent with length {length} and n {n}"
            )

        if reader.next("tuples section") != "tuples":
            raise ModelFormatError("expected 'tuples' section")
        rows = []
        for index in range(k):
            parts = reader.next(f"tuple row {index}").split()
            if len(parts) != n:
                raise ModelInvariantError(f"tuple row {index} has {len(parts)} indices, expected {n}")
            rows.append([reader.parse_int(p, f"tuple row {index}") for p in parts])
        tuples = np.asarray(rows, dtype=np.int64)
        if tuples.size and (tuples.min() < 0 or tuples.max() >= length):
            raise ModelInvariantError("tuple index out of retina range")
        try:
            mapping = TupleMapping(length=length, n=n, tuples=tuples)
        except ValueError as exc:
            raise ModelInvariantError(str(exc)) from exc

        model = cls(config, mapping)
        class_count = reader.int_field("classes")
        for _ in range(class_count):
            parts = reader.next("class header").split()
            if len(parts) != 4 or parts[0] != "class" or parts[2] != "trained":
                raise ModelFormatError(f"malformed class header: {' '.join(parts)!r}")
            label = reader.parse_int(parts[1], "class header")
            trained = reader.parse_int(parts[3], "class header")
            if label in model.discriminators:
                raise ModelInvariantError(f"duplicate class {label}")
            rams: list[dict[int, int]] = []
            for index in range(k):
                parts = reader.next(f"ram row {index}").split()
                if len(parts) < 2 or parts[0] != "ram" or reader.parse_int(parts[1], "ram row") != index:
                    raise ModelFormatError(f"expected 'ram {index}' row")
                ram: dict[int, int] = {}
                for cell in parts[2:]:
                    address, _, count = cell.partition(":")
                    address = reader.parse_int(address, f"ram row {index}")
                    count = reader.parse_int(count, f"ram row {index}")
                    if not 0 <= address < 2**n:
                        raise ModelInvariantError(
                            f"address {address} outside [0, 2^{n}) in ram {index}"
                        )
                    if count < 1:
                        raise ModelInvariantError(f"write count {count} < 1 in ram {index}")
                    if address in ram:
                        raise ModelInvariantError(f"duplicate address {address} in ram {index}")
                    ram[address] = count
                rams.append(ram)
            model.discriminators[label] = rams
            model.trained_counts[label] = trained
        if reader.next("end marker") != "end":
            raise ModelFormatError("expected 'end' marker")
        return model

    @classmethod
    def load(cls, path) -> "WisardModel":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


class _LineReader:
    """Sequential reader that turns premature EOF into ModelTruncatedError."""

    def __init__(self, text: str):
        self._lines = text.splitlines()
        self._pos = 0

    def next(self, what: str) -> str:
        if self._pos >= len(self._lines):
            raise ModelTruncatedError(f"file ends before {what}")
        line = self._lines[self._pos]
        self._pos += 1
        return line

    def _field(self, key: str) -> str:
        line = self.next(f"field {key!r}")
        prefix = key + " "
        if not line.startswith(prefix):
            raise ModelFormatError(f"expected field {key!r}, found {line!r}")
        return line[len(prefix):]

    def str_field(self, key: str) -> str:
        return self._field(key)

    def int_field(self, key: str) -> int:
        return self.parse_int(self._field(key), f"field {key!r}")

    def float_field(self, key: str) -> float:
        raw = self._field(key)
        try:
            return float(raw)
        except ValueError as exc:
            raise ModelFormatError(f"bad number {raw!r} in field {key!r}") from exc

    @staticmethod
    def parse_int(raw: str, where: str) -> int:
        try:
            return int(raw)
        except ValueError as exc:
            raise ModelFormatError(f"bad integer {raw!r} in {where}") from exc
