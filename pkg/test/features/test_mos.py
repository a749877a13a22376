import numpy as np
import pytest

from pdgait import ValidationError
from pdgait.features import compute_mos, single_support_intervals, estimate_leg_length
from pdgait.features.mos import GRAVITY
from pdgait.skeleton import H36M17
from pdgait.structures import Foot, GaitEvents

EVENTS = GaitEvents.from_feet(([0, 40], [25]), ([20, 60], [5, 45]))


def _static_walk(make_walk, left_ml, right_ml, n_frames=70):
    frames = np.zeros((n_frames, 17, 3))
    # Sacrum moves forward so the walking direction is defined
    frames[:, :, 0] = np.arange(n_frames)[:, None] / 30.0
    frames[:, H36M17.role("left_ankle"), 1] = left_ml
    frames[:, H36M17.role("right_ankle"), 1] = right_ml
    return make_walk(frames=frames)


def test_single_support_intervals():
    intervals = single_support_intervals(EVENTS)
    assert [(i.stance, i.start, i.end) for i in intervals] == [
        (Foot.LEFT, 5, 20),
        (Foot.RIGHT, 25, 40),
        (Foot.LEFT, 45, 60),
    ]


def test_mos_com_above_ankle(make_walk):
    walk = _static_walk(make_walk, 0.0, 0.0)
    np.testing.assert_allclose(compute_mos(walk, EVENTS, leg_length_m=0.9), 0.0, atol=1e-9)


def test_mos_com_inside_base(make_walk):
    walk = _static_walk(make_walk, 0.05, -0.05)
    np.testing.assert_allclose(compute_mos(walk, EVENTS, leg_length_m=0.9), 0.05, atol=1e-9)


def test_mos_invalid_leg_length(make_walk):
    with pytest.raises(ValidationError):
        compute_mos(_static_walk(make_walk, 0.05, -0.05), EVENTS, leg_length_m=0.0)


def test_mos_matches_pendulum_model(synthetic_walk):
    walk, events = synthetic_walk
    leg_length = 0.9
    omega0 = np.sqrt(GRAVITY / leg_length)

    # Sacrum sway of the generator and its exact derivative
    amplitude, period, width = 0.02, 1.0, 0.12
    t = np.arange(walk.n_frames) / walk.fps
    t0 = 8 / 30.0
    angle = 2 * np.pi * ((t - t0) / period - 0.05)
    xcom = amplitude * np.sin(angle) + amplitude * 2 * np.pi / period * np.cos(angle) / omega0

    expected = []
    for interval in single_support_intervals(events):
        side = 1.0 if interval.stance is Foot.LEFT else -1.0
        window = xcom[interval.start : interval.end + 1]
        expected.append(np.min(side * (side * width / 2 - window)))

    mos = compute_mos(walk, events, leg_length_m=leg_length, lowpass_hz=None)
    np.testing.assert_allclose(mos, expected, atol=1e-3)


def test_leg_length(synthetic_walk):
    length = estimate_leg_length(synthetic_walk.walk)
    assert 0.7 < length < 0.95
