import numpy as np
from scipy.interpolate import interp1d

from ..errors import ValidationError
from ..structures import RawWalk


def resampled_length(n_frames: int, source_fps: float, target_fps: float) -> int:
    """Number of target timestamps k / target_fps that fall within the source timeline"""
    return int(np.floor((n_frames - 1) * target_fps / source_fps + 1e-9)) + 1


def resample(walk: RawWalk, target_fps: float) -> RawWalk:
    if not target_fps > 0:
        raise ValidationError(f"Target fps must be positive, got {target_fps}")
    if walk.n_frames < 2:
        raise ValidationError(f"Walk {walk.walk_id}: at least 2 frames required")
    if target_fps == walk.fps:
        return walk.replace(frames=walk.frames.copy())

    n_out = resampled_length(walk.n_frames, walk.fps, target_fps)
    source_t = np.arange(walk.n_frames) / walk.fps
    target_t = np.minimum(np.arange(n_out) / target_fps, source_t[-1])
    frames = interp1d(source_t, walk.frames, axis=0, kind="linear", assume_sorted=True)(
        target_t
    )
    return walk.replace(frames=frames, fps=float(target_fps))
