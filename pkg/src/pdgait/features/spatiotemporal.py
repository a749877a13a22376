from typing import Tuple, Optional

import numpy as np

from ..errors import InsufficientGait
from ..skeleton import get_layout
from ..structures import RawWalk, GaitEvents, CoordinateConvention
from .filtering import lowpass
from .steps import Step, step_sequence

MIN_SPEED_SPAN_S = 1.0


def compute_step_time(step: Step, fps: float) -> float:
    return (step.lead_frame - step.trail_frame) / fps


def compute_step_length_width(
    step: Step, walk: RawWalk, convention: CoordinateConvention = CoordinateConvention()
) -> Tuple[float, float]:
    """AP and ML distance between the ankles at the leading heel strike"""
    layout = get_layout(walk.layout)
    pose = walk.frames[step.lead_frame]
    lead = pose[layout.role(f"{step.foot.value}_ankle")]
    trail = pose[layout.role(f"{step.foot.other.value}_ankle")]
    ap = convention.column("ap", walk.axes)
    ml = convention.column("ml", walk.axes)
    return float(abs(lead[ap] - trail[ap])), float(abs(lead[ml] - trail[ml]))


def compute_walking_speed(
    walk: RawWalk,
    events: GaitEvents,
    convention: CoordinateConvention = CoordinateConvention(),
    lowpass_hz: Optional[float] = 6.0,
) -> float:
    """Horizontal path length of the sacrum between the first and last event over elapsed time"""
    frames = events.all_frames()
    if len(frames) == 0:
        raise InsufficientGait(f"Walk {walk.walk_id}: no gait events")
    first, last = int(frames[0]), int(frames[-1])
    span = (last - first) / walk.fps
    if span < MIN_SPEED_SPAN_S:
        raise InsufficientGait(
            f"Walk {walk.walk_id}: events span {span:.2f}s, less than {MIN_SPEED_SPAN_S}s"
        )

    columns = [convention.column(r, walk.axes) for r in ("ap", "ml")]
    sacrum = walk.frames[:, get_layout(walk.layout).role("sacrum")][:, columns]
    sacrum = lowpass(sacrum, walk.fps, lowpass_hz)[first : last + 1]
    path = np.linalg.norm(np.diff(sacrum, axis=0), axis=-1).sum()
    return float(path / span)


def compute_cadence(events: GaitEvents, fps: float) -> float:
    """Steps per minute between the first and last heel strike"""
    steps = step_sequence(events)
    if len(steps) < 2:
        raise InsufficientGait(f"Cadence needs 2 steps, got {len(steps)}")
    elapsed = (steps[-1].lead_frame - steps[0].trail_frame) / fps
    return len(steps) / elapsed * 60.0
