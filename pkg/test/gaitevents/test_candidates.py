import numpy as np
import pytest

from pdgait import InsufficientGait, ValidationError
from pdgait.gaitevents import detect_candidates, ap_displacement
from pdgait.skeleton import project_2d
from pdgait.structures import Foot


def test_candidates_match_ground_truth(synthetic_walk):
    walk, events = synthetic_walk
    candidates = detect_candidates(walk)
    for foot in Foot:
        truth = events.heel_strikes(foot)
        detected = candidates.heel_strikes[foot]
        assert len(detected) == len(truth)
        assert np.abs(detected - truth).max() <= 2


def test_reversed_walk_swaps_roles(synthetic_walk):
    walk = synthetic_walk.walk
    forward = detect_candidates(walk)
    backward = detect_candidates(walk.replace(frames=walk.frames[::-1].copy()))
    last = walk.n_frames - 1
    for foot in Foot:
        np.testing.assert_array_equal(
            np.sort(last - forward.toe_offs[foot]), backward.heel_strikes[foot]
        )
        np.testing.assert_array_equal(
            np.sort(last - forward.heel_strikes[foot]), backward.toe_offs[foot]
        )


def test_ap_displacement_is_direction_invariant(synthetic_walk):
    walk = synthetic_walk.walk
    turned = walk.frames.copy()
    turned[..., 0] *= -1
    np.testing.assert_allclose(
        ap_displacement(walk.replace(frames=turned), Foot.LEFT), ap_displacement(walk, Foot.LEFT)
    )


def test_standing_is_insufficient(synthetic_walk):
    walk = synthetic_walk.walk
    standing = walk.replace(frames=np.repeat(walk.frames[:1], walk.n_frames, axis=0))
    with pytest.raises(InsufficientGait):
        detect_candidates(standing)


def test_needs_3d(synthetic_walk):
    with pytest.raises(ValidationError):
        detect_candidates(project_2d(synthetic_walk.walk))
