from __future__ import annotations

import dataclasses
import json
from collections import Counter, defaultdict
from pathlib import Path
from typing import List, Union, Dict, Mapping, Any

from loguru import logger

from ..errors import ParseError, ValidationError
from ..skeleton import get_layout
from ..structures import MedicationState, CoordinateConvention, check_label

_WALK_FIELDS = ("file", "walk_id", "participant", "medication", "label", "fps", "layout")


@dataclasses.dataclass(frozen=True)
class WalkDescriptor(object):
    path: Path
    walk_id: str
    participant: str
    medication: MedicationState
    label: int
    fps: float
    layout: str

    def to_dict(self, root: Path = None) -> Dict[str, Any]:
        file = self.path if root is None else self.path.relative_to(root)
        return {
            "file": file.as_posix(),
            "walk_id": self.walk_id,
            "participant": self.participant,
            "medication": self.medication.name,
            "label": self.label,
            "fps": self.fps,
            "layout": self.layout,
        }


@dataclasses.dataclass
class DatasetManifest(object):
    walks: List[WalkDescriptor]
    convention: CoordinateConvention
    root: Path

    @property
    def participants(self) -> List[str]:
        return sorted({w.participant for w in self.walks})

    @property
    def n_participants(self) -> int:
        return len(self.participants)

    def __len__(self):
        return len(self.walks)

    def __iter__(self):
        return iter(self.walks)

    def walk(self, walk_id: str) -> WalkDescriptor:
        for w in self.walks:
            if w.walk_id == walk_id:
                return w
        raise KeyError(walk_id)

    def participant_labels(self) -> Dict[str, int]:
        """Most frequent walk label of each participant, ties toward the lower score"""
        labels = defaultdict(Counter)
        for w in self.walks:
            labels[w.participant][w.label] += 1
        return {
            p: min(c, key=lambda label: (-c[label], label))
            for p, c in sorted(labels.items())
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coordinate_convention": self.convention.to_dict(),
            "walks": [w.to_dict(self.root) for w in self.walks],
        }

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(walks={len(self.walks)}, "
            f"participants={self.n_participants}, root={self.root})"
        )


def _parse_walk(entry: Mapping[str, Any], root: Path, i: int) -> WalkDescriptor:
    if not isinstance(entry, Mapping):
        raise ParseError(f"Walk entry {i} must be an object")
    missing = [f for f in _WALK_FIELDS if f not in entry]
    if missing:
        raise ParseError(f"Walk entry {i} is missing fields {missing}")

    walk_id = str(entry["walk_id"])
    participant = str(entry["participant"])
    if not walk_id or not participant:
        raise ValidationError(f"Walk entry {i}: empty walk_id or participant")
    try:
        medication = MedicationState.get(str(entry["medication"]))
    except ValueError:
        raise ValidationError(
            f"Walk {walk_id}: medication must be ON or OFF, got {entry['medication']}"
        ) from None
    try:
        fps = float(entry["fps"])
    except (TypeError, ValueError):
        raise ParseError(f"Walk {walk_id}: fps must be a number") from None
    if not fps > 0:
        raise ValidationError(f"Walk {walk_id}: fps must be positive, got {fps}")
    try:
        label = check_label(entry["label"])
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Walk {walk_id}: {e}") from None
    get_layout(str(entry["layout"]))

    path = (root / str(entry["file"])).expanduser()
    if not path.is_file():
        raise ValidationError(f"Walk {walk_id}: trajectory file not found: {path}")

    return WalkDescriptor(
        path=path,
        walk_id=walk_id,
        participant=participant,
        medication=medication,
        label=label,
        fps=fps,
        layout=str(entry["layout"]),
    )


def parse_manifest(content: Mapping[str, Any], root: Path) -> DatasetManifest:
    if not isinstance(content, Mapping) or "walks" not in content:
        raise ParseError('Manifest must be an object with a "walks" list')
    if not isinstance(content["walks"], list):
        raise ParseError('Manifest "walks" must be a list')
    convention = CoordinateConvention.from_dict(
        content.get("coordinate_convention", CoordinateConvention().to_dict())
    )
    if len(content["walks"]) == 0:
        raise ValidationError("Manifest contains no walks")

    walks = [_parse_walk(entry, root, i) for i, entry in enumerate(content["walks"])]
    duplicates = [w for w, c in Counter(w.walk_id for w in walks).items() if c > 1]
    if duplicates:
        raise ValidationError(f"Duplicate walk ids in manifest: {sorted(duplicates)}")

    # Scores are assigned per participant and medication state
    labels = defaultdict(set)
    for w in walks:
        labels[w.participant, w.medication].add(w.label)
    for (participant, medication), values in sorted(
        labels.items(), key=lambda kv: (kv[0][0], kv[0][1].name)
    ):
        if len(values) > 1:
            logger.warning(
                f"Participant {participant} has inconsistent labels {sorted(values)} "
                f"in medication state {medication.name}"
            )

    return DatasetManifest(walks=walks, convention=convention, root=root)


def load_manifest(path: Union[str, Path]) -> DatasetManifest:
    path = Path(path).expanduser().resolve()
    try:
        content = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed manifest {path}: {e}") from None
    except OSError as e:
        raise ValidationError(f"Can not read manifest {path}: {e}") from None

    manifest = parse_manifest(content, path.parent)
    logger.info(
        f"Loaded manifest {path.name}: {len(manifest)} walks "
        f"from {manifest.n_participants} participants"
    )
    return manifest
