import dataclasses

import numpy as np
from scipy.spatial.transform import Rotation

from ..errors import ValidationError
from ..skeleton import get_layout
from ..structures import Clip, CoordinateConvention, AXIS_NAMES
from ..utils import derive_rng


@dataclasses.dataclass
class AugmentationConfig(object):
    rotation_max_deg: float = 15.0
    noise_std_m: float = 0.005
    mirror_prob: float = 0.5
    axis_mask_prob: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.rotation_max_deg < 0 or self.noise_std_m < 0:
            raise ValidationError("Augmentation magnitudes must be non-negative")
        for name in ("mirror_prob", "axis_mask_prob"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValidationError(f"Augmentation {name} must be in [0, 1]")


def clip_rng(seed: int, walk_id: str, clip_index: int) -> np.random.Generator:
    return derive_rng(seed, walk_id, clip_index)


def mirror(clip: Clip, convention: CoordinateConvention = CoordinateConvention()) -> Clip:
    """Reflect the mediolateral axis and swap left/right joints.
    2D clips without a mediolateral axis only swap joints."""
    frames = clip.frames[:, get_layout(clip.layout).mirror_permutation(), :]
    if convention.ml in clip.axes:
        frames[:, :, clip.axes.index(convention.ml)] *= -1
    return clip.replace(frames=frames)


def rotate(clip: Clip, angle_deg: float, convention: CoordinateConvention = CoordinateConvention()) -> Clip:
    """Rotate about the vertical axis through the mean root position.
    2D clips are rotated in their own plane."""
    root = get_layout(clip.layout).root
    pivot = clip.frames[:, root, :].mean(axis=0)
    if clip.dims == 3:
        up = np.eye(3)[AXIS_NAMES.index(convention.up)]
        matrix = Rotation.from_rotvec(np.deg2rad(angle_deg) * up).as_matrix()
        # Reorder from (x, y, z) to the clip column order
        columns = [AXIS_NAMES.index(a) for a in clip.axes]
        matrix = matrix[np.ix_(columns, columns)]
    else:
        a = np.deg2rad(angle_deg)
        matrix = np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])
    frames = (clip.frames - pivot) @ matrix.T + pivot
    return clip.replace(frames=frames)


def augment(
    clip: Clip,
    cfg: AugmentationConfig,
    rng: np.random.Generator = None,
    convention: CoordinateConvention = CoordinateConvention(),
) -> Clip:
    """Random rotation, Gaussian noise, mirroring and axis masking.

    Without an explicit ``rng`` the draws come from (cfg.seed, walk id, clip index),
    so the same clip always receives the same augmentation. All draws are taken
    in a fixed order whether or not they are used.
    """
    if rng is None:
        rng = clip_rng(cfg.seed, clip.source_walk_id, clip.clip_index)

    angle = rng.uniform(-cfg.rotation_max_deg, cfg.rotation_max_deg)
    noise = rng.standard_normal(clip.frames.shape)
    do_mirror = rng.random() < cfg.mirror_prob
    do_mask = rng.random() < cfg.axis_mask_prob
    masked_axis = rng.integers(clip.dims)

    if angle != 0:
        clip = rotate(clip, angle, convention)
    if cfg.noise_std_m > 0:
        clip = clip.replace(frames=clip.frames + cfg.noise_std_m * noise)
    if do_mirror:
        clip = mirror(clip, convention)
    if do_mask:
        frames = clip.frames.copy()
        frames[:, :, masked_axis] = 0.0
        clip = clip.replace(frames=frames)
    return clip
