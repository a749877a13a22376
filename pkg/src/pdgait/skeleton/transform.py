from typing import Tuple

import numpy as np

from ..errors import ValidationError
from ..structures import RawWalk, JointMapping, CoordinateConvention
from .layouts import get_layout


def transform_layout(walk: RawWalk, mapping: JointMapping) -> RawWalk:
    if walk.layout != mapping.source_layout.layout_id:
        raise ValidationError(
            f"Walk {walk.walk_id} has layout {walk.layout}, "
            f"mapping expects {mapping.source_layout.layout_id}"
        )
    if walk.n_joints != mapping.source_layout.joint_count:
        raise ValidationError(
            f"Walk {walk.walk_id} has {walk.n_joints} joints, "
            f"layout {walk.layout} has {mapping.source_layout.joint_count}"
        )

    if mapping.is_copy_only():
        # Fancy indexing keeps coordinates bitwise identical
        index = [
            mapping.source_layout.index(mapping.rules[name].source)
            for name in mapping.target_layout.joint_names
        ]
        frames = walk.frames[:, index, :]
    else:
        frames = np.einsum("ts,fsd->ftd", mapping.matrix(), walk.frames)

    return walk.replace(frames=frames, layout=mapping.target_layout.layout_id)


def project_2d(
    walk: RawWalk,
    plane: Tuple[str, str] = ("ap", "up"),
    convention: CoordinateConvention = CoordinateConvention(),
) -> RawWalk:
    """Orthographic projection keeping the two coordinates named by ``plane``.

    ``plane`` entries are roles (ap, ml, up) or raw axes (x, y, z).
    """
    if walk.dims != 3:
        raise ValidationError(f"Walk {walk.walk_id} is already {walk.dims}D")
    axes = tuple(convention.axis(p) for p in plane)
    if len(axes) != 2 or axes[0] == axes[1]:
        raise ValidationError(f"Projection plane needs two distinct axes, got {plane}")
    columns = [convention.column(a, walk.axes) for a in axes]
    return walk.replace(frames=walk.frames[:, :, columns], axes=axes)


def root_center_and_scale(walk: RawWalk) -> RawWalk:
    """Put the root joint at the origin and scale so that the median
    hip-to-shoulder distance is 1. The applied factor is kept in ``walk.scale``
    so metric values can be recovered."""
    layout = get_layout(walk.layout)
    hips = [layout.role("left_hip"), layout.role("right_hip")]
    shoulders = [layout.role("left_shoulder"), layout.role("right_shoulder")]

    frames = walk.frames - walk.frames[:, [layout.root], :]
    mid_hip = frames[:, hips, :].mean(axis=1)
    mid_shoulder = frames[:, shoulders, :].mean(axis=1)
    distance = float(np.median(np.linalg.norm(mid_shoulder - mid_hip, axis=-1)))
    if not distance > 0:
        raise ValidationError(f"Walk {walk.walk_id}: hip and shoulder joints coincide")

    return walk.replace(frames=frames / distance, scale=walk.scale * distance)
