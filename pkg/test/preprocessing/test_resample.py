import numpy as np
import pytest

from pdgait import ValidationError
from pdgait.preprocessing import resample, resampled_length


def test_resampled_length():
    assert resampled_length(100, 100.0, 30.0) == 30
    assert resampled_length(1001, 100.0, 30.0) == 301
    assert resampled_length(30, 30.0, 30.0) == 30


def test_resample_100_to_30(make_walk):
    t = np.arange(100) / 100.0
    frames = np.broadcast_to(t[:, None, None], (100, 17, 3)).copy()
    out = resample(make_walk(frames=frames, fps=100.0), 30.0)
    assert out.n_frames == 30
    assert out.fps == 30.0
    np.testing.assert_allclose(out.frames[:, 0, 0], np.arange(30) / 30.0, atol=1e-12)


def test_resample_identity(make_walk):
    walk = make_walk(n_frames=12)
    out = resample(walk, walk.fps)
    np.testing.assert_allclose(out.frames, walk.frames, atol=1e-12)
    assert out.frames is not walk.frames


def test_resample_constant_pose(make_walk):
    frames = np.tile(np.random.default_rng(1).normal(size=(1, 17, 3)), (50, 1, 1))
    out = resample(make_walk(frames=frames, fps=100.0), 30.0)
    np.testing.assert_allclose(out.frames, np.broadcast_to(frames[0], out.frames.shape))


def test_resample_invalid(make_walk):
    with pytest.raises(ValidationError):
        resample(make_walk(), 0.0)
