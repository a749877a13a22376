from __future__ import annotations

import dataclasses
from typing import Tuple

import numpy as np

CLIP_LENGTH = 81
# Frame rate the clip length is defined at
CLIP_FPS = 30.0


@dataclasses.dataclass
class Clip(object):
    source_walk_id: str
    clip_index: int
    start_frame: int
    # [clip_len, joints, dims]
    frames: np.ndarray
    fps: float
    layout: str
    axes: Tuple[str, ...]
    padded: bool = False

    @property
    def dims(self) -> int:
        return self.frames.shape[2]

    def replace(self, **changes) -> Clip:
        return dataclasses.replace(self, **changes)

    def __repr__(self):
        return (
            f"{self.__class__.__name__}({self.source_walk_id}#{self.clip_index}, "
            f"start={self.start_frame}, frames={self.frames.shape}, padded={self.padded})"
        )
