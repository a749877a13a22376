"""Random forest of class-weighted CART trees.

Trees are grown with scikit-learn on bootstraps drawn from per-tree generators,
then converted to plain node arrays that this module predicts with and serializes.
"""
from __future__ import annotations

import dataclasses
from typing import List, Dict, Any

import numpy as np
from joblib import Parallel, delayed
from sklearn.tree import DecisionTreeClassifier

from ..errors import ValidationError
from ..utils import derive_rng
from .weights import ClassWeights, check_labels

SCHEMA = "pdgait.random_forest/1"
_LEAF = -1


@dataclasses.dataclass
class RandomForestConfig(object):
    n_trees: int = 500
    mtry: int = 4
    min_samples_leaf: int = 1
    seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        if self.n_trees < 1 or self.mtry < 1 or self.min_samples_leaf < 1:
            raise ValidationError("n_trees, mtry and min_samples_leaf must be ≥ 1")


@dataclasses.dataclass
class DecisionTree(object):
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    # [nodes, classes], rows of leaves sum to 1
    value: np.ndarray

    @classmethod
    def from_sklearn(cls, tree: DecisionTreeClassifier, n_classes: int) -> DecisionTree:
        t = tree.tree_
        is_leaf = t.children_left == _LEAF
        value = np.zeros((t.node_count, n_classes))
        value[:, tree.classes_.astype(np.int64)] = t.value[:, 0, :]
        value /= value.sum(axis=1, keepdims=True)
        return cls(
            feature=np.where(is_leaf, _LEAF, t.feature).astype(np.int64),
            threshold=np.where(is_leaf, 0.0, t.threshold),
            left=t.children_left.astype(np.int64),
            right=t.children_right.astype(np.int64),
            value=np.where(is_leaf[:, None], value, 0.0),
        )

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index of every row"""
        # Compare in single precision, as the thresholds were learned
        X = np.asarray(X, dtype=np.float32)
        node = np.zeros(len(X), dtype=np.int64)
        rows = np.arange(len(X))
        while True:
            internal = self.feature[node] != _LEAF
            if not internal.any():
                return node
            go_left = X[rows, np.maximum(self.feature[node], 0)] <= self.threshold[node]
            node = np.where(internal, np.where(go_left, self.left[node], self.right[node]), node)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.apply(X)]

    def to_dict(self, node: int = 0) -> Dict[str, Any]:
        if self.feature[node] == _LEAF:
            return {"leaf": self.value[node].tolist()}
        return {
            "feature": int(self.feature[node]),
            "threshold": float(self.threshold[node]),
            "left": self.to_dict(int(self.left[node])),
            "right": self.to_dict(int(self.right[node])),
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any], n_classes: int) -> DecisionTree:
        feature, threshold, left, right, value = [], [], [], [], []

        def visit(record) -> int:
            i = len(feature)
            feature.append(_LEAF)
            threshold.append(0.0)
            left.append(_LEAF)
            right.append(_LEAF)
            value.append(np.zeros(n_classes))
            if "leaf" in record:
                value[i] = np.asarray(record["leaf"], dtype=np.float64)
            else:
                feature[i] = int(record["feature"])
                threshold[i] = float(record["threshold"])
                left[i] = visit(record["left"])
                right[i] = visit(record["right"])
            return i

        visit(d)
        return cls(
            np.array(feature, dtype=np.int64),
            np.array(threshold),
            np.array(left, dtype=np.int64),
            np.array(right, dtype=np.int64),
            np.stack(value),
        )


@dataclasses.dataclass
class RandomForestModel(object):
    trees: List[DecisionTree]
    n_classes: int
    n_features: int
    config: RandomForestConfig

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.n_features:
            raise ValidationError(
                f"Forest expects {self.n_features} features, got {X.shape[1]}"
            )
        return np.mean([tree.predict_proba(X) for tree in self.trees], axis=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "config": dataclasses.asdict(self.config),
            "n_classes": self.n_classes,
            "n_features": self.n_features,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> RandomForestModel:
        if d.get("schema") != SCHEMA:
            raise ValidationError(f"Expected schema {SCHEMA}, got {d.get('schema')}")
        return cls(
            trees=[DecisionTree.from_dict(t, d["n_classes"]) for t in d["trees"]],
            n_classes=d["n_classes"],
            n_features=d["n_features"],
            config=RandomForestConfig(**d["config"]),
        )


def check_features(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise ValidationError(f"Features must be a non-empty [samples, features] matrix")
    if not np.isfinite(X).all():
        raise ValidationError("Features contain NaN or Inf")
    return X


def _grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    sample_weight: np.ndarray,
    n_classes: int,
    cfg: RandomForestConfig,
    tree_index: int,
) -> DecisionTree:
    rng = derive_rng(cfg.seed, "tree", tree_index)
    sample = rng.integers(0, len(X), size=len(X))
    tree = DecisionTreeClassifier(
        criterion="gini",
        max_features=min(cfg.mtry, X.shape[1]),
        min_samples_leaf=cfg.min_samples_leaf,
        random_state=int(rng.integers(2 ** 31 - 1)),
    )
    # Class weighting through sample weights, bootstraps may miss a class
    tree.fit(X[sample], y[sample], sample_weight=sample_weight[sample])
    return DecisionTree.from_sklearn(tree, n_classes)


def train_random_forest(
    X, labels, weights: ClassWeights, cfg: RandomForestConfig = RandomForestConfig()
) -> RandomForestModel:
    X = check_features(X)
    y = check_labels(labels, len(weights))
    if len(y) != len(X):
        raise ValidationError(f"{len(X)} feature rows but {len(y)} labels")
    if len(np.unique(y)) < 2:
        raise ValidationError("Random forest needs at least 2 classes")

    trees = Parallel(n_jobs=cfg.n_jobs)(
        delayed(_grow_tree)(X, y, weights.per_sample(y), len(weights), cfg, i)
        for i in range(cfg.n_trees)
    )
    return RandomForestModel(
        trees=list(trees), n_classes=len(weights), n_features=X.shape[1], config=cfg
    )


def predict_forest(model: RandomForestModel, x) -> np.ndarray:
    """Mean leaf distribution over trees, for one vector or a batch"""
    x = np.asarray(x, dtype=np.float64)
    probabilities = model.predict_proba(x)
    return probabilities[0] if x.ndim == 1 else probabilities


def predicted_score(probabilities: np.ndarray) -> np.ndarray:
    """Argmax, ties toward the lower score"""
    return np.argmax(probabilities, axis=-1)
