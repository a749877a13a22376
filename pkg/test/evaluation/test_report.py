import dataclasses
import json
from pathlib import Path

import pytest

from pdgait.evaluation import (
    FoldPlan,
    MethodResult,
    Protocol,
    summarize_method,
    leaderboard,
    wilcoxon_table,
    per_class_table,
    build_report,
    write_report,
    write_tables,
    slug,
    on_off_analysis,
)
from pdgait.evaluation.report import format_leaderboard, format_wilcoxon

GOLDEN = Path(__file__).parent / "golden"


def test_summarize_method(small_method_result):
    summary = summarize_method(small_method_result)
    assert set(summary.metrics) == {"overall", "ON", "OFF"}
    assert summary.metrics["overall"].weighted_f1 == pytest.approx(0.75)
    assert summary.metrics["ON"].accuracy == 1.0
    assert summary.metrics["OFF"].accuracy == 0.5
    assert summary.onoff.result.n_effective == 2
    assert summary.onoff_error is None


def test_summary_without_paired_states(small_method_result):
    fold = small_method_result.folds[0]
    on_only = dataclasses.replace(fold, predictions=[p for p in fold.predictions if p.medication == "ON"])
    summary = summarize_method(MethodResult("ON only", [on_only]))
    assert set(summary.metrics) == {"overall", "ON"}
    assert summary.onoff is None
    assert "both medication states" in summary.onoff_error


def test_per_class_table(small_method_result):
    table = per_class_table(summarize_method(small_method_result).metrics["overall"])
    assert list(table.index)[-1] == "Weighted Avg"
    assert table.loc["Weighted Avg", "Precision"] == pytest.approx(0.875)


def test_leaderboard_sorted_by_f1(small_method_result):
    fold = small_method_result.folds[0]
    perfect = dataclasses.replace(
        fold, predictions=[dataclasses.replace(p, predicted=p.label) for p in fold.predictions]
    )
    summaries = [
        summarize_method(MethodResult("Perfect", [perfect])),
        summarize_method(small_method_result),
    ]
    table = leaderboard(summaries)
    assert list(table["Method"]) == ["Feature-based RF", "Perfect"]
    assert list(table.columns) == ["Method", "Accuracy", "Precision", "Recall", "F1-Score"]
    assert table["F1-Score"].tolist() == pytest.approx([0.75, 1.0])
    assert "Perfect" in format_leaderboard(table)


def test_wilcoxon_table(small_method_result):
    summary = summarize_method(small_method_result)
    table = wilcoxon_table([summary])
    assert list(table["Method"]) == ["Ground-truth", "Feature-based RF"]
    assert table.loc[1, "p-value"] == pytest.approx(0.5)
    assert table.loc[0, "n_effective"] == 0
    text = format_wilcoxon(table)
    assert "0.5000" in text
    assert "Significance" not in text


def test_build_report_is_json(tmp_path, small_method_result):
    summary = summarize_method(small_method_result)
    plan = FoldPlan(0, ("P1_ON", "P1_OFF", "P2_ON", "P2_OFF"), (), ("X",))
    failed = MethodResult("Broken", error="ValidationError: no embeddings")
    report = build_report(
        {"seed": 0}, Protocol.STANDARD_CV, [plan], [small_method_result, failed], [summary]
    )
    assert report["protocol"] == {"name": "standard_cv", "split": "70/15/15"}
    assert report["failures"] == {"Broken": "ValidationError: no embeddings"}
    assert list(report["methods"]) == ["Feature-based RF"]
    assert report["leaderboard"][0]["F1-Score"] == pytest.approx(0.75)
    assert report["wilcoxon"][0]["Method"] == "Ground-truth"

    path = write_report(report, tmp_path / "report.json")
    assert json.loads(path.read_text()) == json.loads(json.dumps(report))


def test_write_tables(tmp_path, small_method_result):
    paths = write_tables([summarize_method(small_method_result)], None, tmp_path)
    assert [p.name for p in paths] == [
        "leaderboard.csv",
        "wilcoxon.csv",
        "per_class_Feature-based_RF.csv",
    ]
    assert paths[2].read_text() == (GOLDEN / "per_class.csv").read_text()
    assert paths[0].read_text().splitlines()[1] == "Feature-based RF,0.75,0.88,0.75,0.75"


@pytest.mark.parametrize(
    "name, expected",
    [("Feature-based RF", "Feature-based_RF"), ("MotionBERT", "MotionBERT"), ("a/b c", "a_b_c")],
)
def test_slug(name, expected):
    assert slug(name) == expected


def test_tables_match_golden_files(tmp_path, small_method_result):
    fold = small_method_result.folds[0]
    perfect = dataclasses.replace(
        fold, predictions=[dataclasses.replace(p, predicted=p.label) for p in fold.predictions]
    )
    summaries = [
        summarize_method(small_method_result),
        summarize_method(MethodResult("Perfect", [perfect])),
    ]
    ground_truth = on_off_analysis(small_method_result.predictions, source="label")
    paths = write_tables(summaries, ground_truth, tmp_path)
    for name in ("leaderboard.csv", "wilcoxon.csv"):
        assert (tmp_path / name).read_text() == (GOLDEN / name).read_text(), name
    assert [p.name for p in paths][2:] == ["per_class_Feature-based_RF.csv", "per_class_Perfect.csv"]
