import itertools

import numpy as np
import pytest

from pdgait import ValidationError
from pdgait.metrics import compute_metrics


def _weighted_f1_oracle(y_true, y_pred, labels=(0, 1, 2)):
    total = 0.0
    for label in labels:
        tp = sum(t == label and p == label for t, p in zip(y_true, y_pred))
        fp = sum(t != label and p == label for t, p in zip(y_true, y_pred))
        fn = sum(t == label and p != label for t, p in zip(y_true, y_pred))
        f1 = 2 * tp / (2 * tp + fp + fn) if tp else 0.0
        total += f1 * sum(t == label for t in y_true)
    return total / len(y_true)


def test_perfect_predictions():
    report, confusion = compute_metrics([0, 1, 2, 2], [0, 1, 2, 2])
    assert report.accuracy == 1.0
    assert report.weighted_f1 == pytest.approx(1.0)
    np.testing.assert_array_equal(confusion.counts, np.diag([1, 1, 2]))


def test_small_example():
    report, confusion = compute_metrics([0, 0, 1, 2], [0, 1, 1, 2])
    assert report.accuracy == 0.75
    np.testing.assert_allclose(report.precision, [1.0, 0.5, 1.0])
    np.testing.assert_allclose(report.recall, [0.5, 1.0, 1.0])
    np.testing.assert_allclose(report.f1, [2 / 3, 2 / 3, 1.0])
    assert report.weighted_precision == pytest.approx(0.875)
    assert report.weighted_recall == pytest.approx(0.75)
    assert report.weighted_f1 == pytest.approx(0.75)
    assert report.weighted_f1 == pytest.approx(_weighted_f1_oracle([0, 0, 1, 2], [0, 1, 1, 2]))
    np.testing.assert_array_equal(confusion.counts, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert confusion.total == 4


def test_against_oracle():
    rng = np.random.default_rng(0)
    for _ in range(20):
        y_true = rng.integers(0, 3, 15).tolist()
        y_pred = rng.integers(0, 3, 15).tolist()
        report, _ = compute_metrics(y_true, y_pred)
        assert report.weighted_f1 == pytest.approx(_weighted_f1_oracle(y_true, y_pred))
        assert report.accuracy == pytest.approx(np.mean(np.equal(y_true, y_pred)))


def test_against_oracle_many_classes():
    rng = np.random.default_rng(1)
    for n_classes in range(3, 11):
        labels = tuple(range(n_classes))
        for _ in range(10):
            y_true = rng.integers(0, n_classes, 40).tolist()
            y_pred = rng.integers(0, n_classes, 40).tolist()
            report, confusion = compute_metrics(y_true, y_pred, labels)
            assert report.weighted_f1 == pytest.approx(_weighted_f1_oracle(y_true, y_pred, labels))
            assert confusion.counts.shape == (n_classes, n_classes)
            assert confusion.total == 40


def test_all_pairs_of_length_two():
    for y_true, y_pred in itertools.product(itertools.product(range(3), repeat=2), repeat=2):
        report, _ = compute_metrics(y_true, y_pred)
        assert report.weighted_f1 == pytest.approx(_weighted_f1_oracle(y_true, y_pred))


def test_class_without_support():
    report, confusion = compute_metrics([0, 0, 1], [0, 2, 1])
    np.testing.assert_array_equal(confusion.normalized()[2], [0.0, 0.0, 0.0])
    np.testing.assert_allclose(confusion.normalized()[0], [0.5, 0.0, 0.5])
    assert report.f1[2] == 0.0
    assert report.support.tolist() == [2, 1, 0]


def test_to_dict():
    report, confusion = compute_metrics([0, 0, 1, 2], [0, 1, 1, 2])
    d = report.to_dict()
    assert d["per_class"]["1"] == {"precision": 0.5, "recall": 1.0, "f1": pytest.approx(2 / 3), "support": 1}
    assert confusion.to_dict()["counts"] == [[1, 1, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize(
    "y_true, y_pred",
    [
        ([], []),
        ([0, 1], [0]),
        ([0, 3], [0, 1]),
        ([0, 1], [0, -1]),
    ],
)
def test_invalid(y_true, y_pred):
    with pytest.raises(ValidationError):
        compute_metrics(y_true, y_pred)


def test_order_of_predictions_does_not_matter():
    rng = np.random.default_rng(5)
    y_true, y_pred = rng.integers(0, 3, size=40), rng.integers(0, 3, size=40)
    report, confusion = compute_metrics(y_true, y_pred)
    for _ in range(5):
        order = rng.permutation(40)
        shuffled, shuffled_confusion = compute_metrics(y_true[order], y_pred[order])
        np.testing.assert_array_equal(shuffled_confusion.counts, confusion.counts)
        assert shuffled.accuracy == report.accuracy
        assert shuffled.weighted_f1 == report.weighted_f1
        np.testing.assert_array_equal(shuffled.f1, report.f1)
