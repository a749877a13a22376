from typing import List, Optional

import numpy as np

from ..errors import ValidationError
from ..structures import RawWalk, Clip, CLIP_LENGTH, CLIP_FPS


def n_clips(n_frames: int, clip_len: int = CLIP_LENGTH, stride: int = CLIP_LENGTH) -> int:
    if n_frames < clip_len:
        return 1
    return (n_frames - clip_len) // stride + 1


def clip_walk(
    walk: RawWalk,
    clip_len: int = CLIP_LENGTH,
    stride: int = CLIP_LENGTH,
    fps: Optional[float] = CLIP_FPS,
) -> List[Clip]:
    """Cut a walk into fixed-length windows. Walks shorter than one window
    give a single clip padded by repeating the first and last frames.

    The walk must already be resampled to ``fps``, None skips the check.
    """
    if clip_len < 1 or stride < 1:
        raise ValueError("clip_len and stride must be positive")
    if fps is not None and not np.isclose(walk.fps, fps):
        raise ValidationError(
            f"Walk {walk.walk_id} is at {walk.fps:g} fps, clips are cut at {fps:g} fps"
        )

    def make(clip_index, start, frames, padded=False):
        return Clip(
            source_walk_id=walk.walk_id,
            clip_index=clip_index,
            start_frame=start,
            frames=frames,
            fps=walk.fps,
            layout=walk.layout,
            axes=walk.axes,
            padded=padded,
        )

    if walk.n_frames < clip_len:
        missing = clip_len - walk.n_frames
        front = missing // 2
        frames = np.pad(walk.frames, ((front, missing - front), (0, 0), (0, 0)), mode="edge")
        return [make(0, 0, frames, padded=True)]

    return [
        make(i, start, walk.frames[start : start + clip_len].copy())
        for i, start in enumerate(
            range(0, n_clips(walk.n_frames, clip_len, stride) * stride, stride)
        )
    ]
