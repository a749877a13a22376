"""Kalman filtering and Rauch-Tung-Striebel smoothing of quadrature phase signals"""
import dataclasses

import numpy as np
from loguru import logger

from ..errors import ValidationError, NumericalError
from ..structures import PhaseSignal
from .quadrature import TWO_PI

# Constant phase-rate model, one frame per step
_F = np.array([[1.0, 1.0], [0.0, 1.0]])
_Q_SHAPE = np.array([[1.0 / 3.0, 0.5], [0.5, 1.0]])


@dataclasses.dataclass
class SmootherConfig(object):
    process_noise_q: float = 1e-4
    measurement_noise_r: float = 1e-2
    initial_variance: float = 1.0
    # ekf: state [φ, φ̇] observed through (cos φ, sin φ)
    # linear: (cos φ, sin φ) smoothed as two independent channels
    mode: str = "ekf"
    iterations: int = 1

    def __post_init__(self):
        for name in ("process_noise_q", "measurement_noise_r", "initial_variance"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"Smoother {name} must be positive")
        if self.mode not in ("ekf", "linear"):
            raise ValidationError(f"Unknown smoother mode {self.mode}")
        if self.iterations < 1:
            raise ValidationError("Smoother iterations must be ≥ 1")


def _ensure_pd(P: np.ndarray, initial_variance: float) -> np.ndarray:
    try:
        np.linalg.cholesky(P)
        return P
    except np.linalg.LinAlgError:
        logger.warning("Covariance lost positive-definiteness, resetting")
    P = initial_variance * np.eye(len(P))
    try:
        np.linalg.cholesky(P)
    except np.linalg.LinAlgError:
        raise NumericalError("Covariance reset failed") from None
    return P


def _rts(xs: np.ndarray, Ps: np.ndarray, Q: np.ndarray, clamp_rate: bool):
    """Backward pass over filtered states, in place on copies"""
    xs, Ps = xs.copy(), Ps.copy()
    for k in range(len(xs) - 2, -1, -1):
        P_pred = _F @ Ps[k] @ _F.T + Q
        G = Ps[k] @ _F.T @ np.linalg.inv(P_pred)
        # Ps[k + 1] is already smoothed, Ps[k] still the filtered estimate
        xs[k] = xs[k] + G @ (xs[k + 1] - _F @ xs[k])
        Ps[k] = Ps[k] + G @ (Ps[k + 1] - P_pred) @ G.T
        if clamp_rate:
            xs[k, 1] = max(xs[k, 1], 0.0)
    return xs, Ps


def _initial_state(signal: PhaseSignal) -> np.ndarray:
    observed = np.unwrap(np.arctan2(signal.samples[:, 1], signal.samples[:, 0]))
    if signal.phase is not None:
        # Stay on the same 2π branch as the input
        observed += TWO_PI * np.round((signal.phase[0] - observed[0]) / TWO_PI)
    rate = float(np.median(np.diff(observed))) if len(observed) > 1 else 0.0
    return np.array([observed[0], max(rate, 0.0)])


def _smooth_ekf(signal: PhaseSignal, cfg: SmootherConfig):
    n = len(signal)
    Q = cfg.process_noise_q * _Q_SHAPE
    R = cfg.measurement_noise_r * np.eye(2)
    I = np.eye(2)

    xs = np.zeros((n, 2))
    Ps = np.zeros((n, 2, 2))
    x = _initial_state(signal)
    P = cfg.initial_variance * I
    for k in range(n):
        if k > 0:
            x = _F @ x
            P = _F @ P @ _F.T + Q
        x_prior, z = x, signal.samples[k]

        # Iterated EKF update, relinearized around the latest estimate
        x_i = x_prior
        for _ in range(cfg.iterations):
            H = np.array([[-np.sin(x_i[0]), 0.0], [np.cos(x_i[0]), 0.0]])
            h = np.array([np.cos(x_i[0]), np.sin(x_i[0])])
            S = H @ P @ H.T + R
            K = P @ H.T @ np.linalg.inv(S)
            x_i = x_prior + K @ (z - h - H @ (x_prior - x_i))
        x = x_i
        x[1] = max(x[1], 0.0)
        # Joseph form
        P = (I - K @ H) @ P @ (I - K @ H).T + K @ R @ K.T
        P = _ensure_pd(P, cfg.initial_variance)

        if not np.isfinite(x).all():
            raise NumericalError(f"Phase filter diverged at frame {k}")
        xs[k], Ps[k] = x, P

    xs, _ = _rts(xs, Ps, Q, clamp_rate=True)
    return xs[:, 0], xs[:, 1]


def _smooth_linear(signal: PhaseSignal, cfg: SmootherConfig):
    n = len(signal)
    Q = cfg.process_noise_q * _Q_SHAPE
    H = np.array([[1.0, 0.0]])
    channels = []
    for c in range(2):
        z = signal.samples[:, c]
        xs = np.zeros((n, 2))
        Ps = np.zeros((n, 2, 2))
        x = np.array([z[0], 0.0])
        P = cfg.initial_variance * np.eye(2)
        for k in range(n):
            if k > 0:
                x = _F @ x
                P = _F @ P @ _F.T + Q
            S = H @ P @ H.T + cfg.measurement_noise_r
            K = P @ H.T / S
            x = x + (K * (z[k] - H @ x)).ravel()
            P = _ensure_pd((np.eye(2) - K @ H) @ P, cfg.initial_variance)
            xs[k], Ps[k] = x, P
        xs, _ = _rts(xs, Ps, Q, clamp_rate=False)
        channels.append(xs[:, 0])

    phase = np.unwrap(np.arctan2(channels[1], channels[0]))
    if signal.phase is not None:
        phase += TWO_PI * np.round((signal.phase[0] - phase[0]) / TWO_PI)
    rate = np.maximum(np.gradient(phase), 0.0) if n > 1 else np.zeros(n)
    return phase, rate


def smooth_phase(signal: PhaseSignal, cfg: SmootherConfig = SmootherConfig()) -> PhaseSignal:
    if cfg.mode == "ekf":
        phase, rate = _smooth_ekf(signal, cfg)
    else:
        phase, rate = _smooth_linear(signal, cfg)

    if not np.isfinite(phase).all():
        raise NumericalError("Smoothed phase is not finite")
    # Phase never runs backwards
    phase = np.maximum.accumulate(phase)
    samples = np.stack([np.cos(phase), np.sin(phase)], axis=-1)
    return PhaseSignal(
        foot=signal.foot, samples=samples, fps=signal.fps, phase=phase, rate=rate
    )
