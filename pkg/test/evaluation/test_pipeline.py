import dataclasses

import numpy as np
import pandas as pd
import pytest

from pdgait import ValidationError
from pdgait.evaluation import (
    EvaluationConfig,
    FeatureSource,
    EmbeddingSource,
    plan_losocv,
    run_fold,
    run_protocol,
    predictions_frame,
    walk_table,
)
from pdgait.datasets import CohortSpec, synthesize_cohort
from pdgait.features import extract_features, features_frame
from pdgait.gaitevents import detect_gait_events
from pdgait.metrics import compute_metrics
from pdgait.models import Embedding, EmbeddingIndex, RandomForestConfig, LinearHeadConfig

from .helpers import cohort_table, separable_features

FAST = EvaluationConfig(forest=RandomForestConfig(n_trees=20))


def test_feature_fold():
    table = cohort_table(9)
    source = FeatureSource("rf", separable_features(table))
    plan = plan_losocv(table)[4]
    result = run_fold(plan, source, table, FAST)
    assert result.fold_id == 4
    assert [p.walk_id for p in result.predictions] == ["P05_0", "P05_1"]
    assert all(p.predicted == p.label == 1 for p in result.predictions)
    assert result.predictions[0].clip_scores == (1,)
    assert result.predictions[1].medication == "OFF"
    assert result.n_training == 2 * len(plan.training_participants)
    assert result.excluded == []


def test_missing_walks_are_excluded():
    table = cohort_table(9)
    source = FeatureSource(
        "rf", separable_features(table).drop(index="P01_1"), {"P01_1": "InsufficientGait: 1 step"}
    )
    result = run_fold(plan_losocv(table)[0], source, table, FAST)
    assert [p.walk_id for p in result.predictions] == ["P01_0"]
    assert len(result.excluded) == 1
    assert result.excluded[0].walk_id == "P01_1"
    assert result.excluded[0].reason == "InsufficientGait: 1 step"


def test_fold_errors_carry_fold_id():
    table = cohort_table(9)
    features = separable_features(table)
    source = FeatureSource("rf", features[table["label"] < 2])
    plan = plan_losocv(table)[3]
    with pytest.raises(ValidationError, match=r"\[2\]") as info:
        run_fold(plan, source, table, FAST)
    assert info.value.fold_id == 3


def _embedding_source(table, dim=3, clips=2, seed=0):
    rng = np.random.default_rng(seed)
    embeddings = [
        Embedding(walk_id, k, 3.0 * np.eye(dim)[label] + rng.normal(0.0, 0.01, dim), "emb")
        for walk_id, label in table["label"].items()
        for k in range(clips)
    ]
    return EmbeddingSource("emb", EmbeddingIndex.from_embeddings("emb", embeddings))


def test_embedding_fold():
    table = cohort_table(9)
    source = _embedding_source(table)
    plan = plan_losocv(table)[2]
    cfg = dataclasses.replace(FAST, linear_head=LinearHeadConfig(epochs=100))
    result = run_fold(plan, source, table, cfg)
    assert result.n_training == 2 * len(plan.training_walks)
    assert result.n_validation == 2 * len(plan.validation_walks)
    assert [p.predicted for p in result.predictions] == [2, 2]
    assert all(len(p.clip_scores) == 2 for p in result.predictions)


def test_parallel_folds_match_serial():
    table = cohort_table(6)
    source = FeatureSource("rf", separable_features(table, seed=1))
    plans = plan_losocv(table)
    serial = predictions_frame(run_protocol(plans, source, table, FAST, n_jobs=1))
    parallel = predictions_frame(run_protocol(plans, source, table, FAST, n_jobs=2))
    pd.testing.assert_frame_equal(serial, parallel)
    assert len(serial) == 12


def test_truth_event_features_classify_cohort(small_cohort):
    _, manifest, walks = small_cohort
    table = walk_table(manifest)
    features = features_frame([(walk, extract_features(walk, events)) for walk, events in walks])
    source = FeatureSource("rf", features.set_index("walk_id"))
    cfg = EvaluationConfig(forest=RandomForestConfig(n_trees=50))
    predictions = predictions_frame(run_protocol(plan_losocv(table), source, table, cfg))
    report, _ = compute_metrics(predictions["label"], predictions["predicted"])
    assert len(predictions) == 18
    assert report.accuracy >= 0.9


def test_detected_event_features_classify_reference_cohort():
    walks = synthesize_cohort(CohortSpec(n_participants=24, walks_per_participant=10))
    rows = [(walk, extract_features(walk, detect_gait_events(walk))) for walk, _ in walks]
    features = features_frame(rows).set_index("walk_id")
    table = walk_table(features)
    source = FeatureSource("rf", features)
    cfg = EvaluationConfig(forest=RandomForestConfig(n_trees=50))
    plans = plan_losocv(table)
    predictions = predictions_frame(run_protocol(plans, source, table, cfg))
    report, _ = compute_metrics(predictions["label"], predictions["predicted"])
    assert len(plans) == 24
    assert len(predictions) == 240
    assert report.accuracy >= 0.9
