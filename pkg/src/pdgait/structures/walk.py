from __future__ import annotations

import dataclasses
from enum import Enum
from typing import Tuple, Mapping

import numpy as np

from ..errors import ValidationError
from ..utils import NamedEnumMixin

AXIS_NAMES = ("x", "y", "z")
MAX_UPDRS_SCORE = 4


class MedicationState(NamedEnumMixin, Enum):
    ON = "ON"
    OFF = "OFF"


class Foot(NamedEnumMixin, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> Foot:
        return Foot.RIGHT if self is Foot.LEFT else Foot.LEFT


@dataclasses.dataclass(frozen=True)
class CoordinateConvention(object):
    """Which coordinate axis plays the anteroposterior, mediolateral and vertical role"""

    ap: str = "x"
    ml: str = "y"
    up: str = "z"

    def __post_init__(self):
        roles = (self.ap, self.ml, self.up)
        if any(a not in AXIS_NAMES for a in roles) or len(set(roles)) != 3:
            raise ValidationError(f"Unknown axis convention: {self.to_dict()}")

    def axis(self, role_or_axis: str) -> str:
        """Resolve a role name (ap, ml, up) or a raw axis name (x, y, z) to an axis name"""
        if role_or_axis in AXIS_NAMES:
            return role_or_axis
        if role_or_axis in ("ap", "ml", "up"):
            return getattr(self, role_or_axis)
        raise ValidationError(f"Unknown axis or role: {role_or_axis}")

    def column(self, role_or_axis: str, axes: Tuple[str, ...]) -> int:
        axis = self.axis(role_or_axis)
        try:
            return axes.index(axis)
        except ValueError:
            raise ValidationError(
                f"Axis {axis} ({role_or_axis}) not present in sequence axes {axes}"
            ) from None

    def to_dict(self):
        return {"ap": self.ap, "ml": self.ml, "up": self.up}

    @classmethod
    def from_dict(cls, d: Mapping[str, str]) -> CoordinateConvention:
        if not isinstance(d, Mapping) or set(d.keys()) != {"ap", "ml", "up"}:
            raise ValidationError(f"Unknown axis convention: {d}")
        return cls(ap=d["ap"], ml=d["ml"], up=d["up"])


def check_label(label) -> int:
    if isinstance(label, bool) or not float(label).is_integer():
        raise ValidationError(f"UPDRS-gait score must be an integer, got {label}")
    label = int(label)
    if not 0 <= label <= MAX_UPDRS_SCORE:
        raise ValidationError(
            f"UPDRS-gait score must be in [0, {MAX_UPDRS_SCORE}], got {label}"
        )
    return label


@dataclasses.dataclass
class RawWalk(object):
    walk_id: str
    participant: str
    medication: MedicationState
    label: int
    fps: float
    layout: str
    # [F, joints, dims]
    frames: np.ndarray
    axes: Tuple[str, ...] = AXIS_NAMES
    # Meters per normalized unit, 1 unless root_center_and_scale was applied
    scale: float = 1.0

    def __post_init__(self):
        self.medication = MedicationState.get(self.medication)
        self.label = check_label(self.label)
        self.axes = tuple(self.axes)
        self.frames = np.asarray(self.frames, dtype=np.float64)
        if not self.participant:
            raise ValidationError(f"Walk {self.walk_id}: empty participant id")
        if not self.fps > 0:
            raise ValidationError(f"Walk {self.walk_id}: fps must be positive")
        if self.frames.ndim != 3 or self.frames.shape[2] != len(self.axes):
            raise ValidationError(
                f"Walk {self.walk_id}: frames must be [F, joints, {len(self.axes)}], "
                f"got {self.frames.shape}"
            )
        if self.frames.shape[0] < 2:
            raise ValidationError(f"Walk {self.walk_id}: at least 2 frames required")
        if not np.isfinite(self.frames).all():
            raise ValidationError(f"Walk {self.walk_id}: NaN or Inf coordinates")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def n_joints(self) -> int:
        return self.frames.shape[1]

    @property
    def dims(self) -> int:
        return self.frames.shape[2]

    @property
    def duration(self) -> float:
        return (self.n_frames - 1) / self.fps

    def replace(self, **changes) -> RawWalk:
        return dataclasses.replace(self, **changes)

    def __repr__(self):
        return (
            f"{self.__class__.__name__}({self.walk_id}, participant={self.participant}, "
            f"{self.medication.name}, label={self.label}, frames={self.frames.shape}, "
            f"fps={self.fps:g})"
        )
