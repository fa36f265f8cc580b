"""Single-layer perceptron baseline on the same real-valued feature vectors."""

from __future__ import annotations

import numpy as np


class Perceptron:
    """Classic online perceptron with a step activation and 0/1 labels.

    Weights and bias start at zero.  Each epoch visits the samples in a
    seed-shuffled order and applies w += lr * (y - yhat) * x (bias treated
    as the weight of a constant 1 input).  yhat is 1 iff w.x + b > 0, so a
    tie at the boundary predicts 0.
    """

    def __init__(self, learning_rate: float = 0.01, epochs: int = 100, seed: int = 0):
        if learning_rate <= 0:
            raise ValueError(f"learning rate must be > 0, got {learning_rate}")
        if epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {epochs}")
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed
        self.weights = None
        self.bias = 0.0

    def fit(self, features, labels) -> "Perceptron":
        x = np.asarray(features, dtype=np.float64)
        y = np.asarray(labels)
        if x.ndim != 2 or x.shape[0] == 0:
            raise ValueError("features must be a non-empty (samples, dim) matrix")
        if y.shape != (x.shape[0],):
            raise ValueError(f"got {x.shape[0]} samples but {y.size} labels")
        if not np.isin(y, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")

        self.weights = np.zeros(x.shape[1])
        self.bias = 0.0
        rng = np.random.default_rng(self.seed)
        for _ in range(self.epochs):
            for i in rng.permutation(x.shape[0]):
                update = self.learning_rate * (y[i] - self._decide(x[i]))
                if update != 0.0:
                    self.weights += update * x[i]
                    self.bias += update
        return self

    def _decide(self, row) -> int:
        return int(row @ self.weights + self.bias > 0)

    def predict(self, features):
        """Labels for one vector (scalar result) or a (samples, dim) matrix."""
        if self.weights is None:
            raise ValueError("perceptron is not fitted")
        x = np.asarray(features, dtype=np.float64)
        if x.shape[-1] != self.weights.size:
            raise ValueError(
                f"dimension mismatch: model has {self.weights.size} weights, "
                f"input has {x.shape[-1]} features"
            )
        return (x @ self.weights + self.bias > 0).astype(int)
