"""On-disk clip store: one npz per walk plus a CSV index (the clip plan)"""
from pathlib import Path
from typing import Dict, List, Union, Mapping, Any

import numpy as np
import pandas as pd

from ..errors import ValidationError, ParseError
from ..structures import Clip

INDEX_FILE = "clip_index.csv"
INDEX_COLUMNS = [
    "walk_id",
    "participant",
    "medication",
    "label",
    "n_frames",
    "n_clips",
    "fps",
    "dims",
]


def save_clips(directory: Union[str, Path], walk_id: str, clips: List[Clip]) -> Path:
    path = Path(directory) / f"{walk_id}.npz"
    np.savez_compressed(
        path,
        frames=np.stack([c.frames for c in clips]),
        clip_index=np.array([c.clip_index for c in clips]),
        start_frame=np.array([c.start_frame for c in clips]),
        padded=np.array([c.padded for c in clips]),
        fps=np.array([c.fps for c in clips]),
        layout=np.array(clips[0].layout),
        axes=np.array(clips[0].axes),
    )
    return path


def load_clips(directory: Union[str, Path], walk_id: str) -> List[Clip]:
    path = Path(directory) / f"{walk_id}.npz"
    if not path.is_file():
        raise ValidationError(f"Clip store has no file for walk {walk_id}: {path}")
    with np.load(path) as data:
        axes = tuple(str(a) for a in data["axes"])
        return [
            Clip(
                source_walk_id=walk_id,
                clip_index=int(data["clip_index"][i]),
                start_frame=int(data["start_frame"][i]),
                frames=data["frames"][i],
                fps=float(data["fps"][i]),
                layout=str(data["layout"]),
                axes=axes,
                padded=bool(data["padded"][i]),
            )
            for i in range(len(data["clip_index"]))
        ]


def write_index(directory: Union[str, Path], rows: List[Mapping[str, Any]]) -> Path:
    path = Path(directory) / INDEX_FILE
    pd.DataFrame(list(rows), columns=INDEX_COLUMNS).to_csv(path, index=False)
    return path


def read_index(directory: Union[str, Path]) -> pd.DataFrame:
    path = Path(directory) / INDEX_FILE
    try:
        df = pd.read_csv(path, dtype={"walk_id": str, "participant": str})
    except FileNotFoundError:
        raise ValidationError(f"Clip index not found: {path}") from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"Malformed clip index {path}: {e}") from None
    missing = set(INDEX_COLUMNS) - set(df.columns)
    if missing:
        raise ParseError(f"Clip index {path} is missing columns {sorted(missing)}")
    return df


def clip_plan(index: pd.DataFrame) -> Dict[str, int]:
    """walk_id → number of evaluation clips"""
    return dict(zip(index["walk_id"], index["n_clips"].astype(int)))
