from typing import NamedTuple, Dict

import numpy as np
from scipy.signal import find_peaks

from ..errors import InsufficientGait, ValidationError
from ..skeleton import get_layout
from ..structures import RawWalk, Foot, CoordinateConvention


class EventCandidates(NamedTuple):
    heel_strikes: Dict[Foot, np.ndarray]
    toe_offs: Dict[Foot, np.ndarray]


def walking_direction(walk: RawWalk, convention: CoordinateConvention) -> float:
    layout = get_layout(walk.layout)
    sacrum = walk.frames[:, layout.role("sacrum"), convention.column("ap", walk.axes)]
    return 1.0 if sacrum[-1] >= sacrum[0] else -1.0


def ap_displacement(
    walk: RawWalk, foot: Foot, convention: CoordinateConvention = CoordinateConvention()
) -> np.ndarray:
    """Ankle minus sacrum along the direction of progression"""
    layout = get_layout(walk.layout)
    ap = convention.column("ap", walk.axes)
    ankle = walk.frames[:, layout.role(f"{foot.value}_ankle"), ap]
    sacrum = walk.frames[:, layout.role("sacrum"), ap]
    return walking_direction(walk, convention) * (ankle - sacrum)


def detect_candidates(
    walk: RawWalk,
    convention: CoordinateConvention = CoordinateConvention(),
    min_separation_s: float = 0.4,
    min_prominence_m: float = 0.05,
) -> EventCandidates:
    """Heel strikes at maxima of the ankle-sacrum AP displacement, toe offs at its minima"""
    if walk.dims != 3:
        raise ValidationError(f"Walk {walk.walk_id}: event detection needs 3D coordinates")
    distance = max(1, int(round(min_separation_s * walk.fps)))

    heel_strikes, toe_offs = {}, {}
    for foot in Foot:
        signal = ap_displacement(walk, foot, convention)
        heel_strikes[foot], _ = find_peaks(signal, distance=distance, prominence=min_prominence_m)
        toe_offs[foot], _ = find_peaks(-signal, distance=distance, prominence=min_prominence_m)
        if len(heel_strikes[foot]) < 2:
            raise InsufficientGait(
                f"Walk {walk.walk_id}: {len(heel_strikes[foot])} heel-strike "
                f"candidates for the {foot.value} foot"
            )
    return EventCandidates(heel_strikes, toe_offs)
