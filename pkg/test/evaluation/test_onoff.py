import pandas as pd
import pytest

from pdgait import DegenerateTest, ValidationError
from pdgait.evaluation import Aggregation, on_off_analysis, participant_scores
from pdgait.metrics import WilcoxonMethod


def _predictions(rows):
    return pd.DataFrame(rows, columns=["participant", "medication", "label", "predicted"])


def test_off_scores_higher():
    rows = []
    for p in range(12):
        off = 1 if p < 10 else 0
        rows += [(f"P{p}", "ON", 0, 0), (f"P{p}", "OFF", off, off)]
    analysis = on_off_analysis(_predictions(rows))
    assert analysis.result.n_effective == 10
    assert analysis.result.w_plus == 55
    assert analysis.result.statistic == 0
    assert analysis.result.p_value == pytest.approx(2 / 1024)
    assert analysis.result.method is WilcoxonMethod.EXACT
    assert analysis.stars == "**"
    d = analysis.to_dict()
    assert d["aggregation"] == "mean"
    assert d["participants"]["P0"] == {"ON": 0.0, "OFF": 1.0}


def test_identical_states():
    rows = [(f"P{p}", m, 1, 1) for p in range(5) for m in ("ON", "OFF")]
    with pytest.raises(DegenerateTest):
        on_off_analysis(_predictions(rows))


def test_participants_need_both_states():
    rows = [("P0", "ON", 0, 0), ("P1", "OFF", 1, 1)]
    with pytest.raises(ValidationError):
        on_off_analysis(_predictions(rows))


def test_mean_aggregation():
    rows = [("P0", "ON", 0, 0), ("P0", "ON", 0, 1), ("P0", "OFF", 1, 2), ("P1", "ON", 0, 0)]
    table = participant_scores(_predictions(rows))
    assert list(table.index) == ["P0"]
    assert list(table.columns) == ["ON", "OFF"]
    assert table.loc["P0", "ON"] == 0.5
    assert table.loc["P0", "OFF"] == 2.0


def test_mode_aggregation():
    rows = [
        ("P0", "ON", 0, 1),
        ("P0", "ON", 0, 2),
        ("P0", "OFF", 1, 1),
        ("P0", "OFF", 1, 1),
        ("P0", "OFF", 1, 2),
    ]
    table = participant_scores(_predictions(rows), aggregation="mode")
    # Ties go to the lower score
    assert table.loc["P0", "ON"] == 1.0
    assert table.loc["P0", "OFF"] == 1.0


def test_ground_truth_column():
    rows = [(f"P{p}", m, int(m == "OFF"), 0) for p in range(6) for m in ("ON", "OFF")]
    analysis = on_off_analysis(_predictions(rows), Aggregation.MEAN, source="label")
    assert analysis.source == "label"
    assert analysis.result.p_value == pytest.approx(2 / 64)
    assert analysis.stars == "*"
