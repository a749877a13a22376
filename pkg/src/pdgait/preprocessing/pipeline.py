import dataclasses
from typing import List, Optional

from ..skeleton import H36M17, get_layout, transform_layout, project_2d, root_center_and_scale
from ..structures import RawWalk, Clip, JointMapping, CoordinateConvention, CLIP_LENGTH
from ..errors import ValidationError
from .resample import resample


@dataclasses.dataclass
class PreprocessConfig(object):
    target_fps: float = 30.0
    clip_len: int = CLIP_LENGTH
    eval_stride: int = CLIP_LENGTH
    train_stride: int = 27
    # Encoder inputs: orthographic projection on ``plane``, then root centering and scaling
    project_2d: bool = True
    plane: List[str] = dataclasses.field(default_factory=lambda: ["ap", "up"])
    normalize: bool = True


def to_standard_layout(walk: RawWalk, mapping: Optional[JointMapping]) -> RawWalk:
    if walk.layout == H36M17.layout_id:
        return walk
    if mapping is None or mapping.source_layout.layout_id != walk.layout:
        raise ValidationError(
            f"Walk {walk.walk_id} has layout {walk.layout} and no mapping to "
            f"{H36M17.layout_id} was given"
        )
    return transform_layout(walk, mapping)


def prepare_walk(
    walk: RawWalk, mapping: Optional[JointMapping], target_fps: Optional[float]
) -> RawWalk:
    """Skeleton transformation and resampling, the metric input of gait features"""
    walk = to_standard_layout(walk, mapping)
    if target_fps is not None:
        walk = resample(walk, target_fps)
    return walk


def encoder_input(
    walk: RawWalk, cfg: PreprocessConfig, convention: CoordinateConvention
) -> RawWalk:
    if cfg.project_2d:
        walk = project_2d(walk, tuple(cfg.plane), convention)
    if cfg.normalize:
        walk = root_center_and_scale(walk)
    return walk


def encode_clip(
    clip: Clip, cfg: PreprocessConfig, convention: CoordinateConvention, scale: float = 1.0
) -> Clip:
    """Encoder input of a metric clip cut from a walk whose encoder input has
    normalization factor ``scale``. Lets clips be augmented in 3D before projection."""
    frames, axes = clip.frames, clip.axes
    if cfg.project_2d:
        axes = tuple(convention.axis(p) for p in cfg.plane)
        frames = frames[:, :, [convention.column(a, clip.axes) for a in axes]]
    if cfg.normalize:
        root = get_layout(clip.layout).root
        frames = (frames - frames[:, [root], :]) / scale
    return clip.replace(frames=frames, axes=axes)
