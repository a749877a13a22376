from pathlib import Path
from typing import Union, List

import numpy as np
import pandas as pd
from loguru import logger

from ..errors import ParseError, ValidationError
from ..skeleton import get_layout
from ..structures import RawWalk, AXIS_NAMES
from .manifest import WalkDescriptor

MAX_GAP_FRAMES = 10


def trajectory_columns(joint_names: List[str], axes=AXIS_NAMES) -> List[str]:
    return [f"{joint}_{axis}" for joint in joint_names for axis in axes]


def _gap_runs(missing: np.ndarray):
    """Yield (start, length) of consecutive True runs in a boolean vector"""
    padded = np.concatenate([[False], missing, [False]]).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    for start, stop in zip(edges[::2], edges[1::2]):
        yield start, stop - start


def fill_gaps(df: pd.DataFrame, max_gap: int = MAX_GAP_FRAMES, name: str = "") -> pd.DataFrame:
    """Linearly interpolate interior gaps of at most ``max_gap`` frames"""
    n_frames = len(df)
    for column in df.columns:
        for start, length in _gap_runs(df[column].isna().to_numpy()):
            if start == 0 or start + length == n_frames:
                raise ValidationError(
                    f"{name}: column {column} is missing at the sequence boundary "
                    f"(frames {start}-{start + length - 1}), can not interpolate"
                )
            if length > max_gap:
                raise ValidationError(
                    f"{name}: column {column} has a gap of {length} frames "
                    f"starting at frame {start}, more than {max_gap}"
                )

    n_missing = int(df.isna().to_numpy().sum())
    if n_missing > 0:
        logger.warning(f"{name}: interpolated {n_missing} missing coordinates")
        df = df.interpolate(method="linear", axis=0, limit_area="inside")
    return df


def read_trajectory(path: Union[str, Path], layout_id: str) -> np.ndarray:
    """Parse a wide trajectory CSV into [F, joints, 3] coordinates"""
    layout = get_layout(layout_id)
    try:
        df = pd.read_csv(path, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"Malformed trajectory file {path}: {e}") from None

    if len(df.columns) == 0 or df.columns[0] != "frame":
        raise ParseError(f"Trajectory file {path}: first column must be 'frame'")
    coordinates = list(df.columns[1:])
    if len(coordinates) % 3 != 0:
        raise ParseError(
            f"Trajectory file {path}: {len(coordinates)} coordinate columns "
            f"is not a multiple of 3"
        )
    if len(coordinates) // 3 != layout.joint_count:
        raise ValidationError(
            f"Trajectory file {path} has {len(coordinates) // 3} joints, "
            f"layout {layout_id} declares {layout.joint_count}"
        )
    expected = trajectory_columns(layout.joint_names)
    if coordinates != expected:
        wrong = next(c for c, e in zip(coordinates, expected) if c != e)
        raise ValidationError(
            f"Trajectory file {path}: column {wrong} does not follow layout {layout_id}"
        )

    try:
        values = df[coordinates].apply(pd.to_numeric, errors="raise").astype(np.float64)
    except (ValueError, TypeError) as e:
        raise ParseError(f"Trajectory file {path}: non-numeric coordinate: {e}") from None
    if np.isinf(values.to_numpy()).any():
        raise ValidationError(f"Trajectory file {path}: infinite coordinates")

    values = fill_gaps(values, name=str(path))
    return values.to_numpy().reshape(len(values), layout.joint_count, 3)


def load_walk(descriptor: WalkDescriptor) -> RawWalk:
    frames = read_trajectory(descriptor.path, descriptor.layout)
    return RawWalk(
        walk_id=descriptor.walk_id,
        participant=descriptor.participant,
        medication=descriptor.medication,
        label=descriptor.label,
        fps=descriptor.fps,
        layout=descriptor.layout,
        frames=frames,
    )


def write_walk(walk: RawWalk, path: Union[str, Path], precision: int = 6):
    """Inverse of ``read_trajectory``, coordinates rounded to ``precision`` decimals"""
    layout = get_layout(walk.layout)
    df = pd.DataFrame(
        walk.frames.reshape(walk.n_frames, -1),
        columns=trajectory_columns(layout.joint_names, walk.axes),
    )
    df.insert(0, "frame", np.arange(walk.n_frames))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=f"%.{precision}f")
