"""Inputs of the two classification paths: gait features per walk, or embeddings per clip"""
from __future__ import annotations

import dataclasses
from typing import Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
from loguru import logger
from tqdm import tqdm

from ..features import FEATURE_NAMES
from ..models import EmbeddingIndex, Embedding, baseline_encoder
from ..preprocessing import (
    AugmentationConfig,
    PreprocessConfig,
    augment,
    clip_walk,
    encoder_input,
    encode_clip,
)
from ..structures import RawWalk, CoordinateConvention
from ..utils import derive_rng


@dataclasses.dataclass
class FeatureSource(object):
    """Feature table indexed by walk_id, and the reason each missing walk failed"""

    name: str
    table: pd.DataFrame
    failures: Dict[str, str] = dataclasses.field(default_factory=dict)

    def has(self, walk_id: str) -> bool:
        return walk_id in self.table.index

    def matrix(self, walk_ids: Iterable[str]) -> np.ndarray:
        return self.table.loc[list(walk_ids), list(FEATURE_NAMES)].to_numpy(dtype=np.float64)

    def missing_reason(self, walk_id: str) -> str:
        return self.failures.get(walk_id, "no gait features")


@dataclasses.dataclass
class EmbeddingSource(object):
    """Evaluation embeddings (one per planned clip) and, optionally, a separate
    training set per walk, e.g. overlapping and augmented clips"""

    name: str
    index: EmbeddingIndex
    training: Optional[Dict[str, np.ndarray]] = None

    def has(self, walk_id: str) -> bool:
        return len(self.index.for_walk(walk_id)) > 0

    def clips(self, walk_id: str) -> List[Embedding]:
        return self.index.for_walk(walk_id)

    def clip_matrix(self, walk_id: str) -> np.ndarray:
        return np.stack([e.values for e in self.clips(walk_id)])

    def training_matrix(self, walk_id: str) -> np.ndarray:
        if self.training is not None:
            return self.training.get(walk_id, np.empty((0, self.index.dim)))
        if not self.has(walk_id):
            return np.empty((0, self.index.dim))
        return self.clip_matrix(walk_id)

    def missing_reason(self, walk_id: str) -> str:
        return f"no {self.name} embeddings"


def baseline_source(
    walks: Iterable[RawWalk],
    preprocess: PreprocessConfig = PreprocessConfig(),
    augmentation: Optional[AugmentationConfig] = AugmentationConfig(),
    n_augmented: int = 1,
    convention: CoordinateConvention = CoordinateConvention(),
    name: str = "baseline",
) -> EmbeddingSource:
    """Built-in statistical encoder. Evaluation clips use the evaluation stride,
    training clips the training stride plus ``n_augmented`` augmented copies each.
    Augmentation acts on the metric 3D clip, before projection and normalization."""

    def cut(w: RawWalk, stride: int):
        return clip_walk(w, preprocess.clip_len, stride, preprocess.target_fps)

    evaluation, training = [], {}
    for walk in tqdm(list(walks), desc=f"Encoding ({name})", leave=False):
        encoded = encoder_input(walk, preprocess, convention)
        evaluation.extend(baseline_encoder(c, name) for c in cut(encoded, preprocess.eval_stride))
        scale = encoded.scale / walk.scale
        rows = []
        for clip, metric in zip(
            cut(encoded, preprocess.train_stride), cut(walk, preprocess.train_stride)
        ):
            rows.append(baseline_encoder(clip, name).values)
            if augmentation is None:
                continue
            for k in range(n_augmented):
                rng = derive_rng(augmentation.seed, clip.source_walk_id, clip.clip_index, k)
                augmented = augment(metric, augmentation, rng, convention)
                augmented = encode_clip(augmented, preprocess, convention, scale)
                rows.append(baseline_encoder(augmented, name).values)
        training[walk.walk_id] = np.stack(rows)

    index = EmbeddingIndex.from_embeddings(name, evaluation)
    logger.info(
        f"Baseline encoder: {len(index)} evaluation clips, "
        f"{sum(len(r) for r in training.values())} training clips of dimension {index.dim}"
    )
    return EmbeddingSource(name=name, index=index, training=training)
