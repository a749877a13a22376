"""Mediolateral margin of stability with the sacrum as center-of-mass proxy"""
from typing import Optional, List, NamedTuple

import numpy as np

from ..errors import InsufficientGait, ValidationError
from ..skeleton import get_layout
from ..structures import RawWalk, GaitEvents, Foot, CoordinateConvention
from ..gaitevents.candidates import walking_direction
from .filtering import lowpass

GRAVITY = 9.81


class SingleSupport(NamedTuple):
    stance: Foot
    start: int
    end: int


def estimate_leg_length(walk: RawWalk) -> float:
    """Mean hip-to-ankle distance over frames and both legs"""
    layout = get_layout(walk.layout)
    lengths = [
        np.linalg.norm(
            walk.frames[:, layout.role(f"{foot.value}_hip")]
            - walk.frames[:, layout.role(f"{foot.value}_ankle")],
            axis=-1,
        )
        for foot in Foot
    ]
    return float(np.mean(lengths)) * walk.scale


def single_support_intervals(events: GaitEvents) -> List[SingleSupport]:
    """From a toe off of one foot to its next heel strike, the other foot in stance"""
    intervals = []
    for stance in Foot:
        swing = stance.other
        stance_hs = events.heel_strikes(stance)
        swing_hs = events.heel_strikes(swing)
        for toe_off in events.toe_offs(swing):
            later = swing_hs[swing_hs > toe_off]
            if len(later) == 0 or not (stance_hs <= toe_off).any():
                continue
            intervals.append(SingleSupport(stance, int(toe_off), int(later[0])))
    return sorted(intervals, key=lambda i: (i.start, i.stance.value))


def compute_mos(
    walk: RawWalk,
    events: GaitEvents,
    leg_length_m: Optional[float] = None,
    convention: CoordinateConvention = CoordinateConvention(),
    lowpass_hz: Optional[float] = 6.0,
) -> np.ndarray:
    """Minimum MOS of every single-support interval, positive inside the base of support"""
    if leg_length_m is None:
        leg_length_m = estimate_leg_length(walk)
    if not leg_length_m > 0:
        raise ValidationError(f"Leg length must be positive, got {leg_length_m}")
    omega0 = np.sqrt(GRAVITY / leg_length_m)

    layout = get_layout(walk.layout)
    ml = convention.column("ml", walk.axes)
    com = lowpass(walk.frames[:, layout.role("sacrum"), ml], walk.fps, lowpass_hz)
    velocity = np.gradient(com) * walk.fps
    xcom = com + velocity / omega0

    direction = walking_direction(walk, convention)
    values = []
    for interval in single_support_intervals(events):
        window = slice(interval.start, interval.end + 1)
        ankle = walk.frames[window, layout.role(f"{interval.stance.value}_ankle"), ml]
        other = walk.frames[window, layout.role(f"{interval.stance.other.value}_ankle"), ml]
        side = np.sign(np.mean(ankle - other))
        if side == 0:
            # Left is +ML when walking toward +AP in a right-handed frame
            side = direction if interval.stance is Foot.LEFT else -direction
        values.append(float(np.min(side * (ankle - xcom[window]))))

    if len(values) == 0:
        raise InsufficientGait(f"Walk {walk.walk_id}: no single-support interval")
    return np.array(values)
