from __future__ import annotations

import dataclasses
import enum
from typing import Dict, Any

import numpy as np
import pandas as pd

from ..errors import ValidationError
from ..metrics import WilcoxonResult, wilcoxon_signed_rank, significance_stars
from ..utils import NamedEnumMixin


class Aggregation(NamedEnumMixin, enum.Enum):
    MEAN = "mean"
    MODE = "mode"


@dataclasses.dataclass
class OnOffAnalysis(object):
    """Per-participant ON/OFF scores and the paired test on them"""

    source: str
    aggregation: Aggregation
    # Indexed by participant, columns ON and OFF
    table: pd.DataFrame
    result: WilcoxonResult

    @property
    def stars(self) -> str:
        return significance_stars(self.result.p_value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "aggregation": self.aggregation.value,
            **self.result.to_dict(),
            "significance": self.stars,
            "participants": {
                p: {"ON": float(row["ON"]), "OFF": float(row["OFF"])}
                for p, row in self.table.iterrows()
            },
        }


def _mode(scores: pd.Series) -> float:
    counts = scores.value_counts()
    return float(counts[counts == counts.max()].index.min())


def participant_scores(
    predictions: pd.DataFrame, column: str = "predicted", aggregation: Aggregation = Aggregation.MEAN
) -> pd.DataFrame:
    """Aggregate walk scores per participant and medication state, keeping
    participants recorded in both states"""
    aggregation = Aggregation.get(aggregation)
    reduce = "mean" if aggregation is Aggregation.MEAN else _mode
    table = (
        predictions.groupby(["participant", "medication"])[column]
        .agg(reduce)
        .unstack("medication")
        .reindex(columns=["ON", "OFF"])
        .dropna()
        .astype(np.float64)
    )
    table.columns.name = None
    return table.sort_index()


def on_off_analysis(
    predictions: pd.DataFrame,
    aggregation: Aggregation = Aggregation.MEAN,
    source: str = "predicted",
) -> OnOffAnalysis:
    """Wilcoxon signed-rank test of OFF against ON scores per participant.
    ``source`` is the prediction column, ``"label"`` gives the ground-truth row."""
    aggregation = Aggregation.get(aggregation)
    table = participant_scores(predictions, source, aggregation)
    if table.empty:
        raise ValidationError("No participant has walks in both medication states")
    result = wilcoxon_signed_rank(table[["ON", "OFF"]].to_numpy())
    return OnOffAnalysis(source, aggregation, table, result)
