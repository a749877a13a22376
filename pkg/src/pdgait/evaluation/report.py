from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import List, Optional, Dict, Any, Union

import pandas as pd
from loguru import logger

from .. import __version__
from ..errors import PdGaitError
from ..metrics import ConfusionMatrix, MetricsReport, compute_metrics, significance_stars
from .folds import FoldPlan
from .onoff import OnOffAnalysis, Aggregation, on_off_analysis
from .pipeline import FoldResult, Protocol, predictions_frame

SUBSETS = ("overall", "OFF", "ON")
SPLITS = {Protocol.LOSOCV: "leave-one-subject-out", Protocol.STANDARD_CV: "70/15/15"}
LEADERBOARD_COLUMNS = ["Method", "Accuracy", "Precision", "Recall", "F1-Score"]
WILCOXON_COLUMNS = ["Method", "Test Statistic", "p-value", "Significance", "n_effective"]
GROUND_TRUTH = "Ground-truth"


@dataclasses.dataclass
class MethodResult(object):
    name: str
    folds: List[FoldResult] = dataclasses.field(default_factory=list)
    error: Optional[str] = None

    @property
    def predictions(self) -> pd.DataFrame:
        return predictions_frame(self.folds)

    @property
    def excluded(self):
        return [e for r in self.folds for e in r.excluded]


@dataclasses.dataclass
class MethodSummary(object):
    name: str
    metrics: Dict[str, MetricsReport]
    confusion: Dict[str, ConfusionMatrix]
    onoff: Optional[OnOffAnalysis] = None
    onoff_error: Optional[str] = None


def _subset(predictions: pd.DataFrame, subset: str) -> pd.DataFrame:
    return predictions if subset == "overall" else predictions[predictions["medication"] == subset]


def summarize_method(
    result: MethodResult, aggregation: Aggregation = Aggregation.MEAN
) -> MethodSummary:
    predictions = result.predictions
    metrics, confusion = {}, {}
    for subset in SUBSETS:
        rows = _subset(predictions, subset)
        if len(rows) > 0:
            metrics[subset], confusion[subset] = compute_metrics(rows["label"], rows["predicted"])

    summary = MethodSummary(result.name, metrics, confusion)
    try:
        summary.onoff = on_off_analysis(predictions, aggregation, "predicted")
    except PdGaitError as e:
        logger.warning(f"{result.name}: no ON/OFF test ({e})")
        summary.onoff_error = str(e)
    return summary


def per_class_table(metrics: MetricsReport) -> pd.DataFrame:
    """Precision, recall and F1 per score plus the support-weighted average"""
    rows = {
        f"UPDRS-gait Score: {label}": [p, r, f]
        for label, p, r, f in zip(metrics.labels, metrics.precision, metrics.recall, metrics.f1)
    }
    rows["Weighted Avg"] = [metrics.weighted_precision, metrics.weighted_recall, metrics.weighted_f1]
    return pd.DataFrame.from_dict(rows, orient="index", columns=["Precision", "Recall", "F1-Score"])


def leaderboard(summaries: List[MethodSummary]) -> pd.DataFrame:
    """One row per method, sorted by weighted F1 ascending"""
    rows = [
        [
            s.name,
            s.metrics["overall"].accuracy,
            s.metrics["overall"].weighted_precision,
            s.metrics["overall"].weighted_recall,
            s.metrics["overall"].weighted_f1,
        ]
        for s in summaries
        if "overall" in s.metrics
    ]
    table = pd.DataFrame(rows, columns=LEADERBOARD_COLUMNS)
    return table.sort_values(["F1-Score", "Method"], kind="mergesort").reset_index(drop=True)


def _wilcoxon_row(name: str, analysis: Optional[OnOffAnalysis]) -> Dict[str, Any]:
    if analysis is None:
        values = [name, None, None, "", 0]
    else:
        result = analysis.result
        values = [name, result.statistic, result.p_value, analysis.stars, result.n_effective]
    return dict(zip(WILCOXON_COLUMNS, values))


def wilcoxon_rows(
    summaries: List[MethodSummary], ground_truth: Optional[OnOffAnalysis] = None
) -> List[Dict[str, Any]]:
    """Ground-truth row first, then one row per method; untestable rows keep empty values"""
    return [_wilcoxon_row(GROUND_TRUTH, ground_truth)] + [
        _wilcoxon_row(s.name, s.onoff) for s in summaries
    ]


def wilcoxon_table(
    summaries: List[MethodSummary], ground_truth: Optional[OnOffAnalysis] = None
) -> pd.DataFrame:
    return pd.DataFrame(wilcoxon_rows(summaries, ground_truth), columns=WILCOXON_COLUMNS)


def _summary_dict(summary: MethodSummary, result: MethodResult) -> Dict[str, Any]:
    return {
        "metrics": {k: v.to_dict() for k, v in summary.metrics.items()},
        "confusion_matrices": {k: v.to_dict() for k, v in summary.confusion.items()},
        "per_class": per_class_table(summary.metrics["overall"]).to_dict(orient="index")
        if "overall" in summary.metrics
        else None,
        "wilcoxon": summary.onoff.to_dict() if summary.onoff else {"error": summary.onoff_error},
        "folds": [r.to_dict() for r in result.folds],
    }


def build_report(
    config: Dict[str, Any],
    protocol: Protocol,
    plans: List[FoldPlan],
    results: List[MethodResult],
    summaries: List[MethodSummary],
    ground_truth: Optional[OnOffAnalysis] = None,
    ground_truth_error: Optional[str] = None,
) -> Dict[str, Any]:
    by_name = {s.name: s for s in summaries}
    return {
        "pdgait_version": __version__,
        "protocol": {"name": protocol.value, "split": SPLITS[protocol]},
        "config": config,
        "folds": [p.to_dict() for p in plans],
        "methods": {
            r.name: _summary_dict(by_name[r.name], r) for r in results if r.name in by_name
        },
        "leaderboard": [
            {k: (v if isinstance(v, str) else float(v)) for k, v in row.items()}
            for row in leaderboard(summaries).to_dict(orient="records")
        ],
        "wilcoxon": wilcoxon_rows(summaries, ground_truth),
        "ground_truth": ground_truth.to_dict() if ground_truth else {"error": ground_truth_error},
        "excluded": [
            {"method": r.name, **dataclasses.asdict(e)} for r in results for e in r.excluded
        ],
        "failures": {r.name: r.error for r in results if r.error is not None},
    }


def write_tables(
    summaries: List[MethodSummary],
    ground_truth: Optional[OnOffAnalysis],
    output_dir: Union[str, Path],
) -> List[Path]:
    output_dir = Path(output_dir)
    paths = [output_dir / "leaderboard.csv", output_dir / "wilcoxon.csv"]
    leaderboard(summaries).to_csv(paths[0], index=False, float_format="%.2f")
    wilcoxon_table(summaries, ground_truth).to_csv(paths[1], index=False, float_format="%.4f")
    for s in summaries:
        if "overall" in s.metrics:
            path = output_dir / f"per_class_{slug(s.name)}.csv"
            per_class_table(s.metrics["overall"]).to_csv(path, float_format="%.2f")
            paths.append(path)
    return paths


def write_report(report: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(report, indent=2, allow_nan=False) + "\n")
    logger.info(f"Report written to {path}")
    return path


def slug(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def format_leaderboard(table: pd.DataFrame) -> str:
    return table.to_string(index=False, float_format="{:.2f}".format)


def format_wilcoxon(table: pd.DataFrame) -> str:
    table = table.copy()
    table["p-value"] = [
        "" if p is None or pd.isna(p) else f"{p:.4f}{significance_stars(p)}" for p in table["p-value"]
    ]
    return table.drop(columns="Significance").to_string(index=False, float_format="{:.1f}".format)
