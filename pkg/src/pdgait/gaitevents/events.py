import dataclasses
from pathlib import Path
from typing import Tuple, List, Optional, Union, Mapping, Any

import numpy as np
import pandas as pd
from loguru import logger

from ..errors import InsufficientGait, ValidationError
from ..structures import PhaseSignal, GaitEvents, RawWalk, Foot, CoordinateConvention
from .candidates import EventCandidates, detect_candidates
from .quadrature import encode_quadrature, TWO_PI
from .smoother import SmootherConfig, smooth_phase

_TOLERANCE = 1e-9
# Frames an extracted event may lie outside of the candidates
SPAN_MARGIN = 2


@dataclasses.dataclass
class EventsConfig(object):
    min_separation_s: float = 0.4
    min_prominence_m: float = 0.05
    toe_off_fraction: float = 0.6
    smoother: SmootherConfig = dataclasses.field(default_factory=SmootherConfig)

    def __post_init__(self):
        if not 0 < self.toe_off_fraction < 1:
            raise ValidationError("toe_off_fraction must be in (0, 1)")


def _crossing_frames(phase: np.ndarray, fraction: float) -> np.ndarray:
    """Frames where the unwrapped phase passes 2π(k + fraction), rounded to the nearest frame"""
    first = np.ceil((phase[0] - _TOLERANCE) / TWO_PI - fraction)
    last = np.floor((phase[-1] + _TOLERANCE) / TWO_PI - fraction)
    targets = TWO_PI * (np.arange(first, last + 1) + fraction)
    if len(targets) == 0:
        return np.zeros(0, dtype=np.int64)

    after = np.clip(np.searchsorted(phase, targets, side="left"), 1, len(phase) - 1)
    before = after - 1
    span = phase[after] - phase[before]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(span > 0, (targets - phase[before]) / span, 0.0)
    times = np.clip(before + np.clip(t, 0.0, 1.0), 0, len(phase) - 1)
    return np.unique(np.floor(times + 0.5).astype(np.int64))


def _within(frames: np.ndarray, span: Optional[Tuple[int, int]]) -> np.ndarray:
    if span is None:
        return frames
    first, last = span
    return frames[(frames >= first - SPAN_MARGIN) & (frames <= last + SPAN_MARGIN)]


def candidate_span(candidates: EventCandidates, foot: Foot) -> Tuple[int, int]:
    frames = np.concatenate([candidates.heel_strikes[foot], candidates.toe_offs[foot]])
    return int(frames.min()), int(frames.max())


def extract_events(
    signal: PhaseSignal,
    toe_off_fraction: float = 0.6,
    span: Optional[Tuple[int, int]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Heel strikes where φ mod 2π crosses 0, toe offs where it crosses 2π·toe_off_fraction.

    The phase is extrapolated before the first and after the last heel strike.
    With ``span``, the first and last candidate frames, events farther than
    ``SPAN_MARGIN`` frames outside of it are dropped.
    """
    phase = signal.unwrapped()
    heel_strikes = _within(_crossing_frames(phase, 0.0), span)
    if len(heel_strikes) < 2:
        raise InsufficientGait(
            f"{len(heel_strikes)} heel strikes found on the {signal.foot.value} foot"
        )
    return heel_strikes, _within(_crossing_frames(phase, toe_off_fraction), span)


def reconcile_events(heel_strikes, toe_offs) -> Tuple[np.ndarray, np.ndarray]:
    """Enforce HS, TO, HS, TO, ... alternation on one foot, keeping the first event of a run"""
    merged = sorted(
        [(int(f), 0) for f in heel_strikes] + [(int(f), 1) for f in toe_offs]
    )
    kept = []
    for frame, kind in merged:
        if kept and (kept[-1][1] == kind or kept[-1][0] == frame):
            continue
        kept.append((frame, kind))
    hs = np.array([f for f, k in kept if k == 0], dtype=np.int64)
    to = np.array([f for f, k in kept if k == 1], dtype=np.int64)
    dropped = len(merged) - len(kept)
    if dropped > 0:
        logger.warning(f"Dropped {dropped} events breaking HS/TO alternation")
    return hs, to


def check_contralateral(events: GaitEvents, name: str = "") -> int:
    """Warn when consecutive heel strikes of one foot do not enclose exactly one
    contralateral heel strike, return the number of violations"""
    violations = 0
    for foot in Foot:
        own = events.heel_strikes(foot)
        other = events.heel_strikes(foot.other)
        for a, b in zip(own[:-1], own[1:]):
            if np.count_nonzero((other > a) & (other < b)) != 1:
                violations += 1
    if violations > 0:
        logger.warning(f"{name}: {violations} strides without exactly one contralateral heel strike")
    return violations


def detect_gait_events(
    walk: RawWalk,
    cfg: EventsConfig = EventsConfig(),
    convention: CoordinateConvention = CoordinateConvention(),
) -> GaitEvents:
    """Candidates, quadrature encoding, smoothing and extraction, per foot"""
    candidates = detect_candidates(
        walk, convention, cfg.min_separation_s, cfg.min_prominence_m
    )
    feet = {}
    for foot in Foot:
        signal = encode_quadrature(
            candidates.heel_strikes[foot], walk.n_frames, walk.fps, foot
        )
        signal = smooth_phase(signal, cfg.smoother)
        feet[foot] = reconcile_events(
            *extract_events(signal, cfg.toe_off_fraction, candidate_span(candidates, foot))
        )

    events = GaitEvents.from_feet(feet[Foot.LEFT], feet[Foot.RIGHT])
    check_contralateral(events, walk.walk_id)
    return events


def write_events_csv(rows: List[Mapping[str, Any]], path: Union[str, Path]):
    pd.DataFrame(list(rows), columns=["walk_id", "foot", "event_type", "frame"]).to_csv(
        path, index=False
    )
