from __future__ import annotations

import dataclasses
from typing import Optional, List, Tuple

import numpy as np

from .walk import Foot


def _as_frames(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64).reshape(-1)


@dataclasses.dataclass
class GaitEvents(object):
    """Per-foot heel-strike and toe-off frame indices of one walk"""

    left_heel_strikes: np.ndarray
    left_toe_offs: np.ndarray
    right_heel_strikes: np.ndarray
    right_toe_offs: np.ndarray

    def __post_init__(self):
        for f in dataclasses.fields(self):
            setattr(self, f.name, _as_frames(getattr(self, f.name)))

    def heel_strikes(self, foot: Foot) -> np.ndarray:
        return getattr(self, f"{Foot.get(foot).value}_heel_strikes")

    def toe_offs(self, foot: Foot) -> np.ndarray:
        return getattr(self, f"{Foot.get(foot).value}_toe_offs")

    @classmethod
    def from_feet(cls, left: Tuple, right: Tuple) -> GaitEvents:
        """Build from (heel_strikes, toe_offs) pairs, one per foot"""
        return cls(left[0], left[1], right[0], right[1])

    def all_frames(self) -> np.ndarray:
        return np.sort(np.concatenate([getattr(self, f.name) for f in dataclasses.fields(self)]))

    def to_records(self, walk_id: str) -> List[dict]:
        records = []
        for foot in Foot:
            for event_type, frames in (
                ("heel_strike", self.heel_strikes(foot)),
                ("toe_off", self.toe_offs(foot)),
            ):
                for frame in frames:
                    records.append(
                        {
                            "walk_id": walk_id,
                            "foot": foot.value,
                            "event_type": event_type,
                            "frame": int(frame),
                        }
                    )
        return sorted(records, key=lambda r: (r["frame"], r["foot"], r["event_type"]))


@dataclasses.dataclass
class PhaseSignal(object):
    foot: Foot
    # [F, 2] = (cos φ, sin φ)
    samples: np.ndarray
    fps: float
    # Unwrapped phase and phase rate (rad/frame), filled by the smoother
    phase: Optional[np.ndarray] = None
    rate: Optional[np.ndarray] = None

    def __post_init__(self):
        self.foot = Foot.get(self.foot)
        self.samples = np.asarray(self.samples, dtype=np.float64)

    def __len__(self):
        return len(self.samples)

    def unwrapped(self) -> np.ndarray:
        if self.phase is not None:
            return self.phase
        return np.unwrap(np.arctan2(self.samples[:, 1], self.samples[:, 0]))
