from __future__ import annotations

import dataclasses
from typing import Sequence, Dict, Any, Tuple

import numpy as np
from sklearn.metrics import confusion_matrix, precision_recall_fscore_support

from ..errors import ValidationError

SCORE_LABELS = (0, 1, 2)


@dataclasses.dataclass(frozen=True)
class ConfusionMatrix(object):
    """Counts indexed as ``counts[true][pred]``"""

    counts: np.ndarray
    labels: Tuple[int, ...] = SCORE_LABELS

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def normalized(self) -> np.ndarray:
        """Row-normalized matrix, rows without support stay zero"""
        rows = self.counts.sum(axis=1, keepdims=True)
        return np.divide(
            self.counts,
            rows,
            out=np.zeros(self.counts.shape, dtype=np.float64),
            where=rows > 0,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "labels": list(self.labels),
            "counts": self.counts.tolist(),
            "normalized": self.normalized().tolist(),
        }


@dataclasses.dataclass(frozen=True)
class MetricsReport(object):
    accuracy: float
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    labels: Tuple[int, ...] = SCORE_LABELS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
            "per_class": {
                str(label): {
                    "precision": float(p),
                    "recall": float(r),
                    "f1": float(f),
                    "support": int(s),
                }
                for label, p, r, f, s in zip(
                    self.labels, self.precision, self.recall, self.f1, self.support
                )
            },
        }


def compute_metrics(
    y_true: Sequence[int], y_pred: Sequence[int], labels: Sequence[int] = SCORE_LABELS
) -> Tuple[MetricsReport, ConfusionMatrix]:
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.size == 0:
        raise ValidationError("Cannot compute metrics without predictions")
    if y_true.shape != y_pred.shape:
        raise ValidationError(f"Got {y_true.size} true labels and {y_pred.size} predictions")
    labels = tuple(int(l) for l in labels)
    unknown = set(np.unique(np.concatenate([y_true, y_pred]))) - set(labels)
    if unknown:
        raise ValidationError(f"Labels {sorted(unknown)} not in {labels}")

    counts = confusion_matrix(y_true, y_pred, labels=labels)
    precision, recall, f1, support = precision_recall_fscore_support(
        y_true, y_pred, labels=labels, average=None, zero_division=0
    )
    share = support / support.sum()
    report = MetricsReport(
        accuracy=float(np.trace(counts) / counts.sum()),
        precision=precision,
        recall=recall,
        f1=f1,
        support=support,
        weighted_precision=float(share @ precision),
        weighted_recall=float(share @ recall),
        weighted_f1=float(share @ f1),
        labels=labels,
    )
    return report, ConfusionMatrix(counts, labels)
