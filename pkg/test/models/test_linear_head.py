import numpy as np
import pytest
import torch

from pdgait import ValidationError
from pdgait.models import (
    LinearHeadConfig,
    LinearHeadModel,
    ClassWeights,
    class_weights_from_labels,
    train_linear_head,
    predict_linear_head,
    linear_head_loss_and_grad,
    save_model,
    load_model,
)


def _one_hot(n_per_class=10):
    y = np.repeat([0, 1, 2], n_per_class)
    return np.eye(3)[y], y


def test_separable_one_hot():
    X, y = _one_hot()
    model = train_linear_head(X, y, class_weights_from_labels(y), LinearHeadConfig(epochs=100))
    np.testing.assert_array_equal(np.argmax(predict_linear_head(model, X), axis=1), y)
    assert model.history[-1] < model.history[0]
    assert len(model.history) == 100


def test_zero_epochs_is_initialization():
    X, y = _one_hot()
    cfg = LinearHeadConfig(epochs=0, seed=5, init_std=0.01)
    model = train_linear_head(X, y, class_weights_from_labels(y), cfg)
    generator = torch.Generator().manual_seed(5)
    expected = 0.01 * torch.randn(3, 3, generator=generator, dtype=torch.float64)
    np.testing.assert_array_equal(model.weight, expected.numpy())
    np.testing.assert_array_equal(model.bias, np.zeros(3))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(12, 5))
    y = np.array([0, 1, 2] * 4)
    weights = ClassWeights((0.5, 1.0, 2.0))
    W = rng.normal(size=(3, 5))
    b = rng.normal(size=3)

    _, grad_W, grad_b = linear_head_loss_and_grad(W, b, X, y, weights)

    def loss(W, b):
        return linear_head_loss_and_grad(W, b, X, y, weights)[0]

    eps = 1e-6
    numeric_W = np.zeros_like(W)
    for idx in np.ndindex(*W.shape):
        step = np.zeros_like(W)
        step[idx] = eps
        numeric_W[idx] = (loss(W + step, b) - loss(W - step, b)) / (2 * eps)
    numeric_b = np.array(
        [(loss(W, b + eps * e) - loss(W, b - eps * e)) / (2 * eps) for e in np.eye(3)]
    )
    analytic = np.concatenate([grad_W.ravel(), grad_b])
    numeric = np.concatenate([numeric_W.ravel(), numeric_b])
    relative = np.abs(analytic - numeric) / np.maximum(np.abs(numeric), 1e-8)
    assert relative.max() < 1e-4


def test_weighted_loss_by_hand():
    # Zero parameters: every sample has loss log(3), scaled by its class weight
    X = np.ones((3, 2))
    loss, _, _ = linear_head_loss_and_grad(
        np.zeros((3, 2)), np.zeros(3), X, [0, 1, 2], ClassWeights((1.0, 2.0, 3.0))
    )
    assert loss == pytest.approx(np.log(3) * (1 + 2 + 3) / 3)


def test_early_stopping_keeps_best_epoch():
    X, y = _one_hot()
    cfg = LinearHeadConfig(epochs=200, patience=5)
    model = train_linear_head(X, y, class_weights_from_labels(y), cfg, X_val=X, labels_val=y)
    # Training stops once validation F1 has not improved for `patience` epochs
    assert len(model.history) == model.best_epoch + 5
    np.testing.assert_array_equal(np.argmax(predict_linear_head(model, X), axis=1), y)


def test_save_and_load(tmp_path):
    X, y = _one_hot()
    model = train_linear_head(X, y, class_weights_from_labels(y), LinearHeadConfig(epochs=10))
    save_model(model, tmp_path / "head.json")
    loaded = load_model(tmp_path / "head.json")
    assert isinstance(loaded, LinearHeadModel)
    np.testing.assert_allclose(predict_linear_head(loaded, X), predict_linear_head(model, X))


def test_errors(tmp_path):
    X, y = _one_hot()
    with pytest.raises(ValidationError):
        train_linear_head(X, np.zeros(len(X), dtype=int), ClassWeights((1.0, 1.0, 1.0)))
    with pytest.raises(ValidationError):
        LinearHeadConfig(learning_rate=0)
    model = train_linear_head(X, y, class_weights_from_labels(y), LinearHeadConfig(epochs=1))
    with pytest.raises(ValidationError):
        predict_linear_head(model, np.zeros((2, 4)))

    path = tmp_path / "model.json"
    path.write_text('{"schema": "something/1"}')
    with pytest.raises(ValidationError):
        load_model(path)
