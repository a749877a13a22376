import json
import sys

import numpy as np
import pandas as pd
import pytest

from pdgait.cli import main, run, SUCCESS, PARTIAL, FATAL
from pdgait.datasets import SyntheticWalk, write_cohort


def test_synth(tmp_path):
    args = ["synth", "--output-dir", str(tmp_path), "--participants", "3", "--walks", "2", "--duration", "6"]
    assert main(args) == SUCCESS
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert len(manifest["walks"]) == 6
    assert (tmp_path / "events_truth.csv").exists()
    assert (tmp_path / "config.yaml").exists()
    assert main(args) == FATAL
    assert main(args + ["--force"]) == SUCCESS


def test_missing_manifest(tmp_path):
    assert main(["features", "--output-dir", str(tmp_path)]) == FATAL


def test_invalid_override(tmp_path):
    assert main(["synth", "--output-dir", str(tmp_path), "synth.unknown=1"]) == FATAL


def test_console_entry_point_exits_with_code(tmp_path, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["pdgait", "features", "--output-dir", str(tmp_path)])
    with pytest.raises(SystemExit) as info:
        run()
    assert info.value.code == FATAL


def test_preprocess(tmp_path, small_cohort):
    manifest_path, _, _ = small_cohort
    assert main(["preprocess", "--manifest", str(manifest_path), "--output-dir", str(tmp_path)]) == SUCCESS
    index = pd.read_csv(tmp_path / "clip_index.csv")
    assert len(index) == 18
    assert (index["n_clips"] == 2).all()
    assert (index["fps"] == 30.0).all()
    assert (index["dims"] == 2).all()
    assert len(list((tmp_path / "clips").iterdir())) == 18


def test_features(tmp_path, small_cohort):
    manifest_path, _, _ = small_cohort
    assert main(["features", "--manifest", str(manifest_path), "--output-dir", str(tmp_path)]) == SUCCESS
    table = pd.read_csv(tmp_path / "features.csv")
    assert len(table) == 18
    assert len(pd.read_csv(tmp_path / "features_failures.csv")) == 0


def test_features_partial_failure(tmp_path, small_cohort):
    _, _, walks = small_cohort
    walk, events = walks[0]
    standing = walk.replace(
        walk_id="P99_ON_01",
        participant="P99",
        frames=np.repeat(walk.frames[:1], walk.n_frames, axis=0),
    )
    manifest_path, _ = write_cohort([*walks[:2], SyntheticWalk(standing, events)], tmp_path / "cohort")

    out = tmp_path / "out"
    assert main(["features", "--manifest", str(manifest_path), "--output-dir", str(out)]) == PARTIAL
    assert len(pd.read_csv(out / "features.csv")) == 2
    failures = pd.read_csv(out / "features_failures.csv")
    assert failures["walk_id"].tolist() == ["P99_ON_01"]
    assert failures["error"].tolist() == ["InsufficientGait"]


def test_benchmark(tmp_path, small_cohort):
    manifest_path, _, _ = small_cohort
    args = [
        "benchmark",
        "--manifest",
        str(manifest_path),
        "--output-dir",
        str(tmp_path),
        "evaluation.forest.n_trees=20",
        "evaluation.linear_head.epochs=60",
    ]
    assert main(args) == SUCCESS
    leaderboard = pd.read_csv(tmp_path / "leaderboard.csv")
    assert sorted(leaderboard["Method"]) == ["Baseline encoder", "Feature-based RF"]
    assert (tmp_path / "figures" / "confusion_Feature-based_RF_overall.svg").exists()
    assert (tmp_path / "per_class_Baseline_encoder.csv").exists()

    report = (tmp_path / "report.json").read_bytes()
    content = json.loads(report)
    assert content["protocol"]["name"] == "losocv"
    assert len(content["folds"]) == 9
    assert content["failures"] == {}
    assert "n_jobs" not in content["config"]["evaluation"]
    assert content["wilcoxon"][0]["Method"] == "Ground-truth"

    assert main(args + ["--force"]) == SUCCESS
    assert (tmp_path / "report.json").read_bytes() == report
