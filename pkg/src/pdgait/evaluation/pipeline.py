from __future__ import annotations

import dataclasses
import enum
from typing import List, Tuple, Union, Dict, Any

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm

from ..errors import PdGaitError
from ..models import (
    RandomForestConfig,
    LinearHeadConfig,
    class_weights_from_labels,
    train_random_forest,
    predict_forest,
    predicted_score,
    train_linear_head,
    predict_linear_head,
    majority_vote,
)
from ..utils import NamedEnumMixin, derive_seed
from .folds import FoldPlan
from .sources import FeatureSource, EmbeddingSource

Source = Union[FeatureSource, EmbeddingSource]


class Protocol(NamedEnumMixin, enum.Enum):
    LOSOCV = "losocv"
    STANDARD_CV = "standard_cv"


@dataclasses.dataclass
class EvaluationConfig(object):
    protocol: str = Protocol.LOSOCV.value
    n_validation: int = 6
    n_splits: int = 7
    validation_fraction: float = 0.15
    aggregation: str = "mean"
    seed: int = 0
    n_jobs: int = 1
    forest: RandomForestConfig = dataclasses.field(default_factory=RandomForestConfig)
    linear_head: LinearHeadConfig = dataclasses.field(default_factory=LinearHeadConfig)


@dataclasses.dataclass(frozen=True)
class WalkPrediction(object):
    fold_id: int
    walk_id: str
    participant: str
    medication: str
    label: int
    predicted: int
    clip_scores: Tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Exclusion(object):
    fold_id: int
    walk_id: str
    reason: str


@dataclasses.dataclass
class FoldResult(object):
    fold_id: int
    predictions: List[WalkPrediction]
    excluded: List[Exclusion]
    n_training: int
    n_validation: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "fold_id": self.fold_id,
            "n_training": self.n_training,
            "n_validation": self.n_validation,
            "predictions": [
                {**dataclasses.asdict(p), "clip_scores": list(p.clip_scores)}
                for p in self.predictions
            ],
            "excluded": [dataclasses.asdict(e) for e in self.excluded],
        }


def _fold_seed(seed: int, fold_id: int) -> int:
    return derive_seed(seed, "fold", fold_id) % 2 ** 32


def _available(source: Source, walk_ids) -> List[str]:
    return [w for w in walk_ids if source.has(w)]


def _predict_walks(plan, source, walks, predict) -> Tuple[List[WalkPrediction], List[Exclusion]]:
    predictions, excluded = [], []
    for walk_id in plan.test_walks:
        if not source.has(walk_id):
            reason = source.missing_reason(walk_id)
            logger.warning(f"Fold {plan.fold_id}: excluding walk {walk_id} ({reason})")
            excluded.append(Exclusion(plan.fold_id, walk_id, reason))
            continue
        probabilities = predict(walk_id)
        clip_scores = predicted_score(probabilities)
        row = walks.loc[walk_id]
        predictions.append(
            WalkPrediction(
                fold_id=plan.fold_id,
                walk_id=walk_id,
                participant=str(row["participant"]),
                medication=str(row["medication"]),
                label=int(row["label"]),
                predicted=majority_vote(clip_scores, probabilities),
                clip_scores=tuple(int(s) for s in clip_scores),
            )
        )
    return predictions, excluded


def _run_features(plan: FoldPlan, source: FeatureSource, walks: pd.DataFrame, cfg: EvaluationConfig):
    train = _available(source, plan.training_walks)
    labels = walks.loc[train, "label"].to_numpy()
    forest = train_random_forest(
        source.matrix(train),
        labels,
        class_weights_from_labels(labels),
        dataclasses.replace(cfg.forest, seed=_fold_seed(cfg.forest.seed, plan.fold_id)),
    )
    predictions, excluded = _predict_walks(
        plan, source, walks, lambda w: predict_forest(forest, source.matrix([w]))
    )
    n_validation = len(_available(source, plan.validation_walks))
    return FoldResult(plan.fold_id, predictions, excluded, len(train), n_validation)


def _stack(source: EmbeddingSource, walks: pd.DataFrame, walk_ids, matrix):
    blocks = [(matrix(w), walks.loc[w, "label"]) for w in walk_ids]
    blocks = [(x, y) for x, y in blocks if len(x) > 0]
    if not blocks:
        return np.empty((0, source.index.dim)), np.empty(0, dtype=np.int64)
    return (
        np.concatenate([x for x, _ in blocks]),
        np.concatenate([np.full(len(x), y, dtype=np.int64) for x, y in blocks]),
    )


def _run_embeddings(plan: FoldPlan, source: EmbeddingSource, walks: pd.DataFrame, cfg: EvaluationConfig):
    X, y = _stack(source, walks, plan.training_walks, source.training_matrix)
    X_val, y_val = _stack(
        source, walks, _available(source, plan.validation_walks), source.clip_matrix
    )
    model = train_linear_head(
        X,
        y,
        class_weights_from_labels(y),
        dataclasses.replace(cfg.linear_head, seed=_fold_seed(cfg.linear_head.seed, plan.fold_id)),
        X_val=X_val,
        labels_val=y_val,
    )
    predictions, excluded = _predict_walks(
        plan, source, walks, lambda w: predict_linear_head(model, source.clip_matrix(w))
    )
    return FoldResult(plan.fold_id, predictions, excluded, len(X), len(X_val))


def run_fold(
    plan: FoldPlan, source: Source, walks: pd.DataFrame, cfg: EvaluationConfig = EvaluationConfig()
) -> FoldResult:
    """Train on the training walks, predict every test walk by majority vote over its clips.
    Errors leave with the ``fold_id`` attribute set."""
    try:
        if isinstance(source, FeatureSource):
            return _run_features(plan, source, walks, cfg)
        return _run_embeddings(plan, source, walks, cfg)
    except PdGaitError as e:
        e.fold_id = plan.fold_id
        raise


def run_protocol(
    plans: List[FoldPlan],
    source: Source,
    walks: pd.DataFrame,
    cfg: EvaluationConfig = EvaluationConfig(),
    n_jobs: int = None,
) -> List[FoldResult]:
    """Run all folds. Seeds depend on fold ids only, so any ``n_jobs`` gives the same results."""
    n_jobs = cfg.n_jobs if n_jobs is None else n_jobs
    results = Parallel(n_jobs=n_jobs)(
        delayed(run_fold)(plan, source, walks, cfg)
        for plan in tqdm(plans, desc=source.name, leave=False)
    )
    n_predicted = sum(len(r.predictions) for r in results)
    n_excluded = sum(len(r.excluded) for r in results)
    logger.info(f"{source.name}: {len(results)} folds, {n_predicted} walks predicted, {n_excluded} excluded")
    return list(results)


def predictions_frame(results: List[FoldResult]) -> pd.DataFrame:
    columns = [f.name for f in dataclasses.fields(WalkPrediction)]
    return pd.DataFrame(
        [dataclasses.astuple(p) for r in results for p in r.predictions], columns=columns
    )
