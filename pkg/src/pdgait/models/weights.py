from __future__ import annotations

import dataclasses
from typing import Tuple, Sequence

import numpy as np

from ..errors import ValidationError

N_CLASSES = 3


def check_labels(labels, n_classes: int = N_CLASSES) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.ndim != 1 or len(labels) == 0:
        raise ValidationError("Labels must be a non-empty vector")
    if not np.isin(labels, np.arange(n_classes)).all():
        raise ValidationError(f"Labels must be in {{0..{n_classes - 1}}}")
    return labels.astype(np.int64)


@dataclasses.dataclass(frozen=True)
class ClassWeights(object):
    weights: Tuple[float, ...]

    def __post_init__(self):
        if any(not w > 0 for w in self.weights):
            raise ValidationError(f"Class weights must be positive, got {self.weights}")

    def as_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.float64)

    def per_sample(self, labels: Sequence[int]) -> np.ndarray:
        return self.as_array()[np.asarray(labels, dtype=np.int64)]

    def __len__(self):
        return len(self.weights)


def class_weights_from_labels(labels, n_classes: int = N_CLASSES) -> ClassWeights:
    """w_c = n_total / (n_classes × n_c)"""
    labels = check_labels(labels, n_classes)
    counts = np.bincount(labels, minlength=n_classes)
    absent = np.flatnonzero(counts == 0).tolist()
    if absent:
        raise ValidationError(f"Classes {absent} are absent from the training labels")
    return ClassWeights(tuple(float(w) for w in len(labels) / (n_classes * counts)))
