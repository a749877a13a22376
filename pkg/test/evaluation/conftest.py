import pytest

from pdgait.evaluation import FoldResult, MethodResult, WalkPrediction


@pytest.fixture
def small_method_result():
    """Truths (0, 0, 1, 2) against predictions (0, 1, 1, 2)"""
    rows = [
        ("P1_ON", "P1", "ON", 0, 0),
        ("P1_OFF", "P1", "OFF", 0, 1),
        ("P2_ON", "P2", "ON", 1, 1),
        ("P2_OFF", "P2", "OFF", 2, 2),
    ]
    predictions = [
        WalkPrediction(0, walk_id, participant, medication, label, predicted, (predicted,))
        for walk_id, participant, medication, label, predicted in rows
    ]
    return MethodResult("Feature-based RF", [FoldResult(0, predictions, [], 2, 0)])
