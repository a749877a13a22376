from typing import Optional

import numpy as np
from scipy.signal import butter, filtfilt

BUTTERWORTH_ORDER = 4


def lowpass(
    x: np.ndarray, fps: float, cutoff_hz: Optional[float], order: int = BUTTERWORTH_ORDER
) -> np.ndarray:
    """Zero-phase Butterworth low-pass along the first axis.

    Returns the input unchanged when the cutoff is disabled, at or above Nyquist,
    or when the sequence is too short for filtfilt padding.
    """
    nyquist = fps / 2
    if cutoff_hz is None or cutoff_hz >= nyquist:
        return x
    b, a = butter(order, cutoff_hz / nyquist, btype="low")
    if x.shape[0] <= 3 * max(len(a), len(b)):
        return x
    return filtfilt(b, a, x, axis=0)
