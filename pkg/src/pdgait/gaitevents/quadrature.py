import numpy as np

from ..errors import InsufficientGait
from ..structures import PhaseSignal, Foot

TWO_PI = 2 * np.pi


def encode_quadrature(heel_strikes, n_frames: int, fps: float, foot: Foot) -> PhaseSignal:
    """Phase 2πk at the k-th heel strike, linear in between and
    extrapolated at the rate of the first/last cycle"""
    hs = np.unique(np.asarray(heel_strikes, dtype=np.float64))
    if len(hs) < 2:
        raise InsufficientGait(f"{len(hs)} heel strikes, quadrature encoding needs 2")

    frames = np.arange(n_frames, dtype=np.float64)
    cycles = TWO_PI * np.arange(len(hs))
    phase = np.interp(frames, hs, cycles)

    before = frames < hs[0]
    phase[before] = (frames[before] - hs[0]) * TWO_PI / (hs[1] - hs[0])
    after = frames > hs[-1]
    phase[after] = cycles[-1] + (frames[after] - hs[-1]) * TWO_PI / (hs[-1] - hs[-2])

    samples = np.stack([np.cos(phase), np.sin(phase)], axis=-1)
    return PhaseSignal(foot=foot, samples=samples, fps=fps, phase=phase)


def phase_rate(signal: PhaseSignal) -> float:
    """Mean phase rate in radians per frame"""
    phase = signal.unwrapped()
    return float((phase[-1] - phase[0]) / (len(phase) - 1))
