import numpy as np
import pytest

from pdgait import ValidationError
from pdgait.preprocessing import (
    PreprocessConfig,
    prepare_walk,
    encoder_input,
    encode_clip,
    to_standard_layout,
    clip_walk,
)
from pdgait.skeleton import default_mapping
from pdgait.structures import CoordinateConvention


def test_prepare_pd44_walk(make_walk):
    walk = make_walk(frames=np.random.default_rng(0).normal(size=(100, 44, 3)), fps=100.0, layout="pd44")
    out = prepare_walk(walk, default_mapping(), 30.0)
    assert out.layout == "h36m17"
    assert out.frames.shape == (30, 17, 3)
    assert out.fps == 30.0


def test_standard_layout_needs_mapping(make_walk):
    walk = make_walk(frames=np.zeros((4, 44, 3)), layout="pd44")
    with pytest.raises(ValidationError):
        to_standard_layout(walk, None)
    h36m = make_walk()
    assert to_standard_layout(h36m, None) is h36m


def test_encoder_input(synthetic_walk):
    out = encoder_input(synthetic_walk.walk, PreprocessConfig(), CoordinateConvention())
    assert out.axes == ("x", "z")
    assert out.dims == 2
    np.testing.assert_allclose(out.frames[:, 0], 0.0, atol=1e-12)
    assert out.scale == pytest.approx(0.6)


def test_encode_clip_matches_encoder_input(synthetic_walk):
    walk, cfg, convention = synthetic_walk.walk, PreprocessConfig(), CoordinateConvention()
    encoded = encoder_input(walk, cfg, convention)
    for clip, metric in zip(clip_walk(encoded), clip_walk(walk)):
        out = encode_clip(metric, cfg, convention, encoded.scale)
        assert out.axes == clip.axes
        np.testing.assert_allclose(out.frames, clip.frames, atol=1e-12)
