from __future__ import annotations

import dataclasses
from typing import List, Tuple, Optional, Dict, Any, Union

import numpy as np
import pandas as pd
from loguru import logger
from sklearn.model_selection import StratifiedKFold, train_test_split

from ..datasets import DatasetManifest
from ..errors import ValidationError
from ..utils import derive_rng, derive_seed

WALK_COLUMNS = ("participant", "medication", "label")
# Reference cohort: 22 non-test participants, 6 of them for validation
_REFERENCE_POOL = 22


@dataclasses.dataclass(frozen=True)
class FoldPlan(object):
    fold_id: int
    test_walks: Tuple[str, ...]
    validation_walks: Tuple[str, ...]
    training_walks: Tuple[str, ...]
    test_participant: Optional[str] = None
    validation_participants: Tuple[str, ...] = ()
    training_participants: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in dataclasses.asdict(self).items()}


def walk_table(walks: Union[DatasetManifest, pd.DataFrame]) -> pd.DataFrame:
    """Walk metadata indexed by walk_id: participant, medication (ON/OFF), label"""
    if isinstance(walks, DatasetManifest):
        return pd.DataFrame(
            {
                "participant": [w.participant for w in walks],
                "medication": [w.medication.name for w in walks],
                "label": [w.label for w in walks],
            },
            index=pd.Index([w.walk_id for w in walks], name="walk_id"),
        )
    missing = [c for c in WALK_COLUMNS if c not in walks.columns]
    if missing:
        raise ValidationError(f"Walk table is missing columns {missing}")
    return walks.loc[:, list(WALK_COLUMNS)]


def participant_labels(table: pd.DataFrame) -> Dict[str, int]:
    """Most frequent walk label per participant, ties toward the lower score"""
    counts = table.groupby(["participant", "label"]).size().rename("n").reset_index()
    counts = counts.sort_values(["participant", "n", "label"], ascending=[True, False, True])
    first = counts.drop_duplicates("participant")
    return {str(p): int(l) for p, l in zip(first["participant"], first["label"])}


def n_validation_participants(n_participants: int, n_validation: int = 6) -> int:
    """Validation size scaled from 6 out of 22 to the cohort, keeping ≥ 1 training participant"""
    if n_validation == 0:
        return 0
    scaled = int(np.floor((n_participants - 1) * n_validation / _REFERENCE_POOL + 0.5))
    return min(n_validation, max(1, scaled), n_participants - 2)


def _pick_validation(
    candidates: List[str], labels: Dict[str, int], n: int, rng: np.random.Generator
) -> List[str]:
    groups = {}
    for p in candidates:
        groups.setdefault(labels[p], []).append(p)
    queues = [
        [groups[label][i] for i in rng.permutation(len(groups[label]))]
        for label in sorted(groups)
    ]
    picked = []
    while len(picked) < n:
        for queue in queues:
            if queue and len(picked) < n:
                picked.append(queue.pop(0))
    return sorted(picked)


def plan_losocv(
    walks: Union[DatasetManifest, pd.DataFrame], n_validation: int = 6, seed: int = 0
) -> List[FoldPlan]:
    """One fold per participant. Validation participants are drawn round robin over
    participant labels, so scores 0, 1 and 2 are spread evenly where counts allow."""
    table = walk_table(walks)
    labels = participant_labels(table)
    participants = sorted(labels)
    if len(participants) < 3:
        raise ValidationError(
            f"Leave-one-subject-out needs at least 3 participants, got {len(participants)}"
        )
    if table["label"].nunique() < 2:
        raise ValidationError("Leave-one-subject-out needs at least 2 labels")

    n_val = n_validation_participants(len(participants), n_validation)
    by_participant = {p: tuple(ids) for p, ids in table.groupby("participant").groups.items()}

    def walks_of(ps):
        return tuple(w for p in ps for w in sorted(by_participant[p]))

    plans = []
    for fold_id, test in enumerate(participants):
        rest = [p for p in participants if p != test]
        validation = _pick_validation(rest, labels, n_val, derive_rng(seed, "losocv", test))
        training = [p for p in rest if p not in validation]
        plans.append(
            FoldPlan(
                fold_id=fold_id,
                test_walks=walks_of([test]),
                validation_walks=walks_of(validation),
                training_walks=walks_of(training),
                test_participant=test,
                validation_participants=tuple(validation),
                training_participants=tuple(training),
            )
        )
    logger.info(
        f"Planned {len(plans)} leave-one-subject-out folds "
        f"({len(participants) - 1 - n_val} training, {n_val} validation participants)"
    )
    return plans


def plan_standard_cv(
    walks: Union[DatasetManifest, pd.DataFrame],
    n_splits: int = 7,
    validation_fraction: float = 0.15,
    seed: int = 0,
) -> List[FoldPlan]:
    """Walk-level stratified folds: each fold tests 1/n_splits of the walks and
    validates on ``validation_fraction`` of all walks drawn from the remainder.
    The defaults give the 70/15/15 split."""
    table = walk_table(walks)
    ids = np.asarray(table.index, dtype=object)
    y = table["label"].to_numpy()
    remainder = 1 - 1 / n_splits
    if not 0 <= validation_fraction < remainder:
        raise ValidationError(f"Validation fraction must be in [0, {remainder:.2f})")

    folds = StratifiedKFold(n_splits, shuffle=True, random_state=derive_seed(seed, "standard_cv") % 2 ** 32)
    try:
        splits = list(folds.split(ids, y))
    except ValueError as e:
        raise ValidationError(f"Cannot split {len(ids)} walks into {n_splits} folds: {e}") from None

    plans = []
    for fold_id, (rest, test) in enumerate(splits):
        validation = np.array([], dtype=np.int64)
        if validation_fraction > 0:
            random_state = derive_seed(seed, "standard_cv", fold_id) % 2 ** 32
            size = validation_fraction / remainder
            try:
                rest, validation = train_test_split(
                    rest, test_size=size, stratify=y[rest], random_state=random_state
                )
            except ValueError:
                # Too few walks of some label to stratify
                rest, validation = train_test_split(rest, test_size=size, random_state=random_state)
        plans.append(
            FoldPlan(
                fold_id=fold_id,
                test_walks=tuple(sorted(ids[test])),
                validation_walks=tuple(sorted(ids[validation])),
                training_walks=tuple(sorted(ids[rest])),
            )
        )
    logger.info(f"Planned {len(plans)} stratified folds over {len(ids)} walks")
    return plans
