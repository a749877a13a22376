from __future__ import annotations

import dataclasses
import re
from pathlib import Path
from typing import Dict, Tuple, List, Mapping, Union, Optional

import numpy as np
import pandas as pd
from loguru import logger

from ..errors import ParseError, ValidationError
from ..structures import Clip

ClipRef = Tuple[str, int]
_VALUE_COLUMN = re.compile(r"e(\d+)$")


@dataclasses.dataclass(frozen=True)
class Embedding(object):
    walk_id: str
    clip_index: int
    values: np.ndarray
    provider_id: str

    @property
    def clip_ref(self) -> ClipRef:
        return self.walk_id, self.clip_index


@dataclasses.dataclass
class EmbeddingIndex(object):
    provider_id: str
    dim: int
    embeddings: Dict[ClipRef, Embedding]
    missing: List[ClipRef] = dataclasses.field(default_factory=list)

    def for_walk(self, walk_id: str) -> List[Embedding]:
        return sorted(
            (e for (w, _), e in self.embeddings.items() if w == walk_id),
            key=lambda e: e.clip_index,
        )

    def __len__(self):
        return len(self.embeddings)

    @classmethod
    def from_embeddings(cls, provider_id: str, embeddings: List[Embedding]) -> EmbeddingIndex:
        dims = {len(e.values) for e in embeddings}
        if len(dims) > 1:
            raise ValidationError(f"Provider {provider_id}: inconsistent dimensions {sorted(dims)}")
        return cls(
            provider_id=provider_id,
            dim=dims.pop() if dims else 0,
            embeddings={e.clip_ref: e for e in embeddings},
        )


def load_embeddings(
    path: Union[str, Path],
    clip_plan: Mapping[str, int],
    provider_id: Optional[str] = None,
) -> EmbeddingIndex:
    """Read ``walk_id,clip_index,e0,...`` rows and resolve them against the clip plan
    (walk_id → number of clips)"""
    path = Path(path)
    provider_id = provider_id or path.stem
    try:
        df = pd.read_csv(path, dtype={"walk_id": str}, float_precision="round_trip")
    except FileNotFoundError:
        raise ValidationError(f"Embedding file not found: {path}") from None
    except pd.errors.ParserError as e:
        if "Expected" in str(e):
            raise ValidationError(f"Embedding file {path}: dimension inconsistency: {e}") from None
        raise ParseError(f"Malformed embedding file {path}: {e}") from None
    except pd.errors.EmptyDataError:
        raise ParseError(f"Embedding file {path} is empty") from None

    columns = list(df.columns)
    values = columns[2:]
    if columns[:2] != ["walk_id", "clip_index"] or not values:
        raise ParseError(f"Embedding file {path}: header must be walk_id,clip_index,e0,...")
    if values != [f"e{i}" for i in range(len(values))]:
        raise ParseError(f"Embedding file {path}: value columns must be e0..e{len(values) - 1}")

    try:
        matrix = df[values].to_numpy(dtype=np.float64)
        clip_index = df["clip_index"].to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as e:
        raise ParseError(f"Embedding file {path}: non-numeric value: {e}") from None

    nan = np.isnan(matrix)
    short = nan.any(axis=1)
    if short.any():
        row = int(np.flatnonzero(short)[0])
        raise ValidationError(
            f"Embedding file {path}: dimension inconsistency, row {row + 2} has "
            f"{int((~nan[row]).sum())} values, header declares {len(values)}"
        )
    if not np.isfinite(matrix).all():
        raise ValidationError(f"Embedding file {path}: non-finite values")
    if np.isnan(clip_index).any() or not np.equal(np.mod(clip_index, 1), 0).all():
        raise ParseError(f"Embedding file {path}: clip_index must be an integer")

    embeddings = {}
    for walk_id, index, row in zip(df["walk_id"], clip_index.astype(np.int64), matrix):
        if walk_id not in clip_plan:
            raise ValidationError(f"Embedding file {path}: unknown walk_id {walk_id}")
        if not 0 <= index < clip_plan[walk_id]:
            raise ValidationError(
                f"Embedding file {path}: walk {walk_id} has no clip {index} "
                f"({clip_plan[walk_id]} clips planned)"
            )
        ref = (walk_id, int(index))
        if ref in embeddings:
            raise ValidationError(f"Embedding file {path}: duplicate clip {ref}")
        embeddings[ref] = Embedding(walk_id, int(index), row, provider_id)

    planned = {(w, i) for w, n in clip_plan.items() for i in range(n)}
    missing = sorted(planned - set(embeddings))
    for ref in missing:
        logger.warning(f"Provider {provider_id}: no embedding for clip {ref}")
    logger.info(
        f"Loaded {len(embeddings)} embeddings of dimension {len(values)} from {path.name}"
    )
    return EmbeddingIndex(provider_id, len(values), embeddings, missing)


def baseline_encoder(clip: Clip, provider_id: str = "baseline") -> Embedding:
    """Per joint and axis: mean, standard deviation and mean absolute first difference"""
    frames = clip.frames
    values = np.concatenate(
        [
            frames.mean(axis=0).ravel(),
            frames.std(axis=0).ravel(),
            np.abs(np.diff(frames, axis=0)).mean(axis=0).ravel(),
        ]
    )
    return Embedding(clip.source_walk_id, clip.clip_index, values, provider_id)
