from typing import NamedTuple, List

from loguru import logger

from ..errors import InsufficientGait
from ..structures import GaitEvents, Foot


class Step(NamedTuple):
    foot: Foot
    """Leading foot, the one striking at ``lead_frame``"""
    trail_frame: int
    lead_frame: int


def step_sequence(events: GaitEvents) -> List[Step]:
    """Pairs of consecutive opposite-foot heel strikes, ordered by the leading heel strike"""
    strikes = sorted(
        (int(frame), foot) for foot in Foot for frame in events.heel_strikes(foot)
    )
    feet = {foot for _, foot in strikes}
    if len(strikes) < 2 or len(feet) < 2:
        raise InsufficientGait(
            f"Steps need heel strikes on both feet, got {len(strikes)} on {len(feet)} feet"
        )

    steps, skipped = [], 0
    for (trail, trail_foot), (lead, lead_foot) in zip(strikes[:-1], strikes[1:]):
        if trail_foot is lead_foot or lead == trail:
            skipped += 1
            continue
        steps.append(Step(lead_foot, trail, lead))
    if skipped > 0:
        logger.warning(f"Skipped {skipped} heel-strike pairs without a foot alternation")
    if len(steps) == 0:
        raise InsufficientGait("No alternating heel strikes")
    return steps
