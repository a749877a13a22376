from __future__ import annotations

import dataclasses
from typing import List, Optional, Dict, Any, Tuple

import numpy as np
import torch
import torch.nn.functional as F
from ignite.engine import Events
from ignite.handlers import EarlyStopping
from loguru import logger
from sklearn.metrics import f1_score

from ..errors import NumericalError, ValidationError
from .engine import FullBatchTrainer
from .forest import check_features
from .weights import ClassWeights, check_labels

SCHEMA = "pdgait.linear_head/1"


@dataclasses.dataclass
class LinearHeadConfig(object):
    learning_rate: float = 0.05
    epochs: int = 300
    patience: int = 30
    init_std: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if not self.learning_rate > 0 or self.epochs < 0 or self.patience < 1:
            raise ValidationError("Invalid linear head configuration")


@dataclasses.dataclass
class LinearHeadModel(object):
    weight: np.ndarray
    bias: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    config: LinearHeadConfig
    history: List[float] = dataclasses.field(default_factory=list)
    best_epoch: Optional[int] = None

    def __post_init__(self):
        if not (np.isfinite(self.weight).all() and np.isfinite(self.bias).all()):
            raise NumericalError("Linear head parameters are not finite")

    def standardize(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "config": dataclasses.asdict(self.config),
            "weight": self.weight.tolist(),
            "bias": self.bias.tolist(),
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
            "best_epoch": self.best_epoch,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> LinearHeadModel:
        if d.get("schema") != SCHEMA:
            raise ValidationError(f"Expected schema {SCHEMA}, got {d.get('schema')}")
        return cls(
            weight=np.array(d["weight"]),
            bias=np.array(d["bias"]),
            mean=np.array(d["mean"]),
            std=np.array(d["std"]),
            config=LinearHeadConfig(**d["config"]),
            best_epoch=d.get("best_epoch"),
        )


def weighted_cross_entropy(
    weight: torch.Tensor,
    bias: torch.Tensor,
    X: torch.Tensor,
    y: torch.Tensor,
    class_weights: torch.Tensor,
) -> torch.Tensor:
    """Mean over samples of w_y × (−log softmax(Wx + b)_y)"""
    logits = X @ weight.T + bias
    return F.cross_entropy(logits, y, weight=class_weights, reduction="none").mean()


def linear_head_loss_and_grad(
    weight: np.ndarray, bias: np.ndarray, X: np.ndarray, y, class_weights: ClassWeights
) -> Tuple[float, np.ndarray, np.ndarray]:
    W = torch.tensor(weight, dtype=torch.float64, requires_grad=True)
    b = torch.tensor(bias, dtype=torch.float64, requires_grad=True)
    loss = weighted_cross_entropy(
        W,
        b,
        torch.as_tensor(X, dtype=torch.float64),
        torch.as_tensor(np.asarray(y), dtype=torch.int64),
        torch.as_tensor(class_weights.as_array()),
    )
    loss.backward()
    return loss.item(), W.grad.numpy(), b.grad.numpy()


def _softmax(logits: np.ndarray) -> np.ndarray:
    return torch.softmax(torch.from_numpy(logits), dim=-1).numpy()


def predict_linear_head(model: LinearHeadModel, X) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != model.weight.shape[1]:
        raise ValidationError(
            f"Linear head expects dimension {model.weight.shape[1]}, got {X.shape[1]}"
        )
    return _softmax(model.standardize(X) @ model.weight.T + model.bias)


def train_linear_head(
    X,
    labels,
    weights: ClassWeights,
    cfg: LinearHeadConfig = LinearHeadConfig(),
    X_val=None,
    labels_val=None,
) -> LinearHeadModel:
    """Full-batch gradient descent with a fixed step. With a validation split,
    training stops early on validation weighted F1 and keeps the best parameters."""
    X = check_features(X)
    y = check_labels(labels, len(weights))
    if len(y) != len(X):
        raise ValidationError(f"{len(X)} embeddings but {len(y)} labels")
    if len(np.unique(y)) < 2:
        raise ValidationError("Linear head needs at least 2 classes")

    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std[std == 0] = 1.0

    generator = torch.Generator().manual_seed(cfg.seed)
    W = cfg.init_std * torch.randn(len(weights), X.shape[1], generator=generator, dtype=torch.float64)
    b = torch.zeros(len(weights), dtype=torch.float64)

    def snapshot(best_epoch=None, history=()):
        return LinearHeadModel(
            weight=W.detach().numpy().copy(),
            bias=b.detach().numpy().copy(),
            mean=mean,
            std=std,
            config=cfg,
            history=list(history),
            best_epoch=best_epoch,
        )

    if cfg.epochs == 0:
        return snapshot()

    W.requires_grad_(True)
    b.requires_grad_(True)
    inputs = torch.from_numpy((X - mean) / std)
    targets = torch.from_numpy(y)
    class_weights = torch.from_numpy(weights.as_array())
    optimizer = torch.optim.SGD([W, b], lr=cfg.learning_rate)

    def step(engine, _):
        optimizer.zero_grad()
        loss = weighted_cross_entropy(W, b, inputs, targets, class_weights)
        if not torch.isfinite(loss):
            raise NumericalError(f"Linear head loss diverged at epoch {engine.state.epoch}")
        loss.backward()
        optimizer.step()
        return loss.item()

    trainer = FullBatchTrainer(step, n_samples=len(X))
    history = []
    trainer.add_event_handler(
        Events.ITERATION_COMPLETED, lambda engine: history.append(engine.state.output)
    )

    best = {"score": -np.inf, "model": None}
    if X_val is not None and len(X_val) > 0:
        X_val = check_features(X_val)
        y_val = check_labels(labels_val, len(weights))

        @trainer.on(Events.EPOCH_COMPLETED)
        def validate(engine):
            model = snapshot(engine.state.epoch)
            predicted = np.argmax(predict_linear_head(model, X_val), axis=1)
            score = f1_score(y_val, predicted, average="weighted", zero_division=0)
            engine.state.metrics["val_f1"] = score
            if score > best["score"]:
                best.update(score=score, model=model)

        trainer.add_event_handler(
            Events.EPOCH_COMPLETED,
            EarlyStopping(
                patience=cfg.patience,
                score_function=lambda engine: engine.state.metrics["val_f1"],
                trainer=trainer,
            ),
        )

    trainer.run(max_epochs=cfg.epochs)

    if best["model"] is not None:
        model = best["model"]
        model.history = history
        logger.debug(
            f"Linear head: best validation weighted F1 {best['score']:.3f} "
            f"at epoch {model.best_epoch}/{trainer.state.epoch} ({trainer.state.samples} samples)"
        )
        return model
    return snapshot(trainer.state.epoch, history)
