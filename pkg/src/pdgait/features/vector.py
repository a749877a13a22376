from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import NamedTuple, Optional, List, Tuple, Union

import numpy as np
import pandas as pd

from ..errors import InsufficientGait, ParseError, ValidationError
from ..structures import RawWalk, GaitEvents, CoordinateConvention
from .mos import compute_mos
from .spatiotemporal import (
    compute_step_time,
    compute_step_length_width,
    compute_walking_speed,
    compute_cadence,
)
from .steps import step_sequence

META_COLUMNS = ("walk_id", "participant", "medication", "label")


@dataclasses.dataclass
class FeaturesConfig(object):
    leg_length_m: Optional[float] = None
    lowpass_hz: Optional[float] = 6.0
    # None keeps the native frame rate of the recording
    resample_fps: Optional[float] = None


@dataclasses.dataclass(frozen=True)
class GaitFeatureVector(object):
    cadence_steps_per_min: float
    step_time_mean_s: float
    step_time_std_s: float
    step_length_mean_m: float
    step_length_std_m: float
    step_width_mean_m: float
    step_width_std_m: float
    walking_speed_m_per_s: float
    mos_min_m: float
    mos_std_m: float
    n_steps: int

    def to_dict(self):
        return dataclasses.asdict(self)


FEATURE_NAMES = tuple(f.name for f in dataclasses.fields(GaitFeatureVector))


class StepValues(NamedTuple):
    step_times: np.ndarray
    step_lengths: np.ndarray
    step_widths: np.ndarray
    mos: np.ndarray


def _std(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1)) if len(values) > 1 else 0.0


def aggregate_features(values: StepValues, cadence: float, speed: float) -> GaitFeatureVector:
    """Mean and sample std over steps, minimum and std for MOS"""
    n_steps = len(values.step_times)
    if n_steps < 2:
        raise InsufficientGait(f"Feature aggregation needs 2 steps, got {n_steps}")
    if len(values.mos) == 0:
        raise InsufficientGait("No margin of stability value")
    return GaitFeatureVector(
        cadence_steps_per_min=float(cadence),
        step_time_mean_s=float(np.mean(values.step_times)),
        step_time_std_s=_std(values.step_times),
        step_length_mean_m=float(np.mean(values.step_lengths)),
        step_length_std_m=_std(values.step_lengths),
        step_width_mean_m=float(np.mean(values.step_widths)),
        step_width_std_m=_std(values.step_widths),
        walking_speed_m_per_s=float(speed),
        mos_min_m=float(np.min(values.mos)),
        mos_std_m=_std(values.mos),
        n_steps=n_steps,
    )


def extract_features(
    walk: RawWalk,
    events: GaitEvents,
    cfg: FeaturesConfig = FeaturesConfig(),
    convention: CoordinateConvention = CoordinateConvention(),
) -> GaitFeatureVector:
    if walk.scale != 1.0:
        raise ValidationError(f"Walk {walk.walk_id}: features need unnormalized coordinates")
    steps = step_sequence(events)
    lengths, widths = zip(*(compute_step_length_width(s, walk, convention) for s in steps))
    values = StepValues(
        step_times=np.array([compute_step_time(s, walk.fps) for s in steps]),
        step_lengths=np.array(lengths),
        step_widths=np.array(widths),
        mos=compute_mos(walk, events, cfg.leg_length_m, convention, cfg.lowpass_hz),
    )
    return aggregate_features(
        values,
        cadence=compute_cadence(events, walk.fps),
        speed=compute_walking_speed(walk, events, convention, cfg.lowpass_hz),
    )


def features_frame(rows: List[Tuple[RawWalk, GaitFeatureVector]]) -> pd.DataFrame:
    records = [
        {
            "walk_id": walk.walk_id,
            "participant": walk.participant,
            "medication": walk.medication.name,
            "label": walk.label,
            **vector.to_dict(),
        }
        for walk, vector in rows
    ]
    return pd.DataFrame(records, columns=[*META_COLUMNS, *FEATURE_NAMES])


def write_features_csv(rows: List[Tuple[RawWalk, GaitFeatureVector]], path: Union[str, Path]):
    features_frame(rows).to_csv(path, index=False)


def read_features_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Features table indexed by walk_id"""
    try:
        df = pd.read_csv(
            path,
            dtype={"walk_id": str, "participant": str, "medication": str},
            float_precision="round_trip",
        )
    except FileNotFoundError:
        raise ValidationError(f"Features file not found: {path}") from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"Malformed features file {path}: {e}") from None
    missing = [c for c in (*META_COLUMNS, *FEATURE_NAMES) if c not in df.columns]
    if missing:
        raise ParseError(f"Features file {path} is missing columns {missing}")
    if not np.isfinite(df[list(FEATURE_NAMES)].to_numpy(dtype=np.float64)).all():
        raise ValidationError(f"Features file {path} contains non-finite values")
    return df.set_index("walk_id", verify_integrity=True)
