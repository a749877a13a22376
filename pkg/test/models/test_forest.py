import numpy as np
import pytest

from pdgait import ValidationError
from pdgait.models import (
    RandomForestConfig,
    RandomForestModel,
    DecisionTree,
    ClassWeights,
    train_random_forest,
    predict_forest,
    predicted_score,
    save_model,
    load_model,
)


def _leaf(distribution):
    return DecisionTree(
        feature=np.array([-1]),
        threshold=np.array([0.0]),
        left=np.array([-1]),
        right=np.array([-1]),
        value=np.array([distribution], dtype=float),
    )


def _forest(leaves):
    return RandomForestModel(
        trees=[_leaf(d) for d in leaves],
        n_classes=3,
        n_features=2,
        config=RandomForestConfig(n_trees=len(leaves)),
    )


def _separable(n=10, seed=0):
    rng = np.random.default_rng(seed)
    X = np.concatenate([rng.uniform(-2, -1, size=(n, 2)), rng.uniform(1, 2, size=(n, 2))])
    y = np.array([0] * n + [1] * n)
    return X, y


def test_unanimous_trees():
    np.testing.assert_allclose(predict_forest(_forest([[0, 1, 0]] * 3), [0.0, 0.0]), [0, 1, 0])


def test_tie_goes_to_lower_score():
    forest = _forest([[1, 0, 0], [1, 0, 0], [0, 0, 1], [0, 0, 1]])
    probabilities = predict_forest(forest, [0.0, 0.0])
    np.testing.assert_allclose(probabilities, [0.5, 0.0, 0.5])
    assert predicted_score(probabilities) == 0


def test_single_tree_leaf_verbatim():
    np.testing.assert_array_equal(
        predict_forest(_forest([[0.2, 0.3, 0.5]]), [1.0, 2.0]), [0.2, 0.3, 0.5]
    )


def test_batch_prediction_shape():
    probabilities = predict_forest(_forest([[0, 1, 0]]), np.zeros((4, 2)))
    assert probabilities.shape == (4, 3)
    with pytest.raises(ValidationError):
        predict_forest(_forest([[0, 1, 0]]), np.zeros((4, 3)))


def test_separable_training_accuracy():
    X, y = _separable()
    forest = train_random_forest(X, y, ClassWeights((1.0, 1.0)), RandomForestConfig(n_trees=25))
    np.testing.assert_array_equal(predicted_score(predict_forest(forest, X)), y)


def test_same_seed_same_forest():
    X, y = _separable()
    cfg = RandomForestConfig(n_trees=10, seed=3)
    a = train_random_forest(X, y, ClassWeights((1.0, 1.0)), cfg)
    b = train_random_forest(X, y, ClassWeights((1.0, 1.0)), cfg)
    assert a.to_dict() == b.to_dict()


def test_parallel_trees_match_serial():
    X, y = _separable()
    serial = train_random_forest(X, y, ClassWeights((1.0, 1.0)), RandomForestConfig(n_trees=6))
    parallel = train_random_forest(X, y, ClassWeights((1.0, 1.0)), RandomForestConfig(n_trees=6, n_jobs=2))
    assert serial.to_dict() == parallel.to_dict()


def test_save_and_load(tmp_path):
    X, y = _separable()
    forest = train_random_forest(X, y, ClassWeights((1.0, 1.0)), RandomForestConfig(n_trees=5))
    save_model(forest, tmp_path / "forest.json")
    loaded = load_model(tmp_path / "forest.json")
    assert isinstance(loaded, RandomForestModel)
    np.testing.assert_array_equal(predict_forest(loaded, X), predict_forest(forest, X))


def test_training_errors():
    X, y = _separable()
    with pytest.raises(ValidationError):
        train_random_forest(X, np.zeros(len(X), dtype=int), ClassWeights((1.0, 1.0)))
    with pytest.raises(ValidationError):
        train_random_forest(X[:-1], y, ClassWeights((1.0, 1.0)))
    X[0, 0] = np.nan
    with pytest.raises(ValidationError):
        train_random_forest(X, y, ClassWeights((1.0, 1.0)))
    with pytest.raises(ValidationError):
        RandomForestConfig(n_trees=0)


def test_tree_order_does_not_matter():
    X, y = _separable()
    forest = train_random_forest(X, y, ClassWeights((1.0, 1.0)), RandomForestConfig(n_trees=9))
    order = np.random.default_rng(0).permutation(len(forest.trees))
    shuffled = RandomForestModel(
        trees=[forest.trees[i] for i in order],
        n_classes=forest.n_classes,
        n_features=forest.n_features,
        config=forest.config,
    )
    grid = np.random.default_rng(1).uniform(-2, 2, size=(50, 2))
    np.testing.assert_allclose(predict_forest(shuffled, grid), predict_forest(forest, grid))
    np.testing.assert_array_equal(
        predicted_score(predict_forest(shuffled, X)), predicted_score(predict_forest(forest, X))
    )
