"""Kinematically consistent synthetic walks with known gait parameters and events"""
from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import NamedTuple, List, Tuple, Union

import numpy as np
from loguru import logger

from ..errors import ValidationError
from ..skeleton import H36M17
from ..structures import RawWalk, GaitEvents, MedicationState, Foot, CoordinateConvention
from ..utils import derive_rng
from .manifest import DatasetManifest, WalkDescriptor
from .trajectory import write_walk

PELVIS_HEIGHT = 0.95
ANKLE_HEIGHT = 0.08
FOOT_CLEARANCE = 0.06
HIP_HALF_WIDTH = 0.10
SHOULDER_HALF_WIDTH = 0.18


@dataclasses.dataclass
class SyntheticGaitSpec(object):
    cadence: float = 120.0
    """Steps per minute"""
    step_length: float = 0.5
    step_width: float = 0.12
    duration: float = 10.0
    fps: float = 30.0
    noise_std: float = 0.0
    sway_amplitude: float = 0.02
    stance_fraction: float = 0.6
    # planted: stance foot fixed on the ground, constant-velocity swing
    # sinusoidal: phase-warped cosine oscillation around the sacrum
    profile: str = "planted"
    seed: int = 0

    walk_id: str = "synthetic"
    participant: str = "synthetic"
    medication: str = "ON"
    label: int = 0

    def __post_init__(self):
        for name in ("cadence", "step_length", "duration", "fps"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"Synthetic gait: {name} must be positive")
        if self.step_width < 0 or self.noise_std < 0 or self.sway_amplitude < 0:
            raise ValidationError("Synthetic gait: widths and noise must be non-negative")
        if not 0 < self.stance_fraction < 1:
            raise ValidationError("Synthetic gait: stance_fraction must be in (0, 1)")
        if self.profile not in ("planted", "sinusoidal"):
            raise ValidationError(f"Synthetic gait: unknown profile {self.profile}")
        if int(round(self.duration * self.fps)) < 2:
            raise ValidationError("Synthetic gait: duration too short for 2 frames")

    @property
    def stride_time(self) -> float:
        return 120.0 / self.cadence

    @property
    def speed(self) -> float:
        return self.cadence / 60.0 * self.step_length

    @property
    def first_heel_strike(self) -> float:
        """Time of the first left heel strike, on a frame boundary. The right foot
        follows half a stride later"""
        return np.round(self.stride_time / 4 * self.fps) / self.fps


class SyntheticWalk(NamedTuple):
    walk: RawWalk
    events: GaitEvents


def _relative_ap(phase: np.ndarray, spec: SyntheticGaitSpec) -> np.ndarray:
    """Ankle minus sacrum AP displacement over the foot's gait cycle, max at HS"""
    s = spec.stance_fraction
    amplitude = spec.step_length * s
    stance = phase < s
    if spec.profile == "planted":
        # Stance: foot fixed while the sacrum advances. Swing: back to the front
        return np.where(
            stance,
            amplitude - 2 * spec.step_length * phase,
            -amplitude + 2 * amplitude * (phase - s) / (1 - s),
        )
    return np.where(
        stance,
        amplitude * np.cos(np.pi * phase / s),
        -amplitude * np.cos(np.pi * (phase - s) / (1 - s)),
    )


def _swing_height(phase: np.ndarray, spec: SyntheticGaitSpec) -> np.ndarray:
    s = spec.stance_fraction
    lift = FOOT_CLEARANCE * np.sin(np.pi * (phase - s) / (1 - s))
    return ANKLE_HEIGHT + np.where(phase < s, 0.0, lift)


def _event_frames(first: float, spec: SyntheticGaitSpec, n_frames: int) -> np.ndarray:
    period = spec.stride_time
    last = (n_frames - 1) / spec.fps
    k = np.arange(np.floor(-first / period), np.ceil((last - first) / period) + 1)
    frames = np.floor((first + k * period) * spec.fps + 0.5).astype(np.int64)
    return frames[(frames >= 0) & (frames <= n_frames - 1)]


def synthesize_gait(spec: SyntheticGaitSpec) -> SyntheticWalk:
    n_frames = int(round(spec.duration * spec.fps))
    t = np.arange(n_frames) / spec.fps
    period = spec.stride_time
    t0 = spec.first_heel_strike
    phase = {
        Foot.LEFT: np.mod((t - t0) / period, 1.0),
        Foot.RIGHT: np.mod((t - t0) / period - 0.5, 1.0),
    }

    # Axis convention: x anteroposterior, y mediolateral (left positive), z up
    sacrum = np.stack(
        [
            spec.speed * t,
            spec.sway_amplitude * np.sin(2 * np.pi * (phase[Foot.LEFT] - 0.05)),
            np.full(n_frames, PELVIS_HEIGHT),
        ],
        axis=-1,
    )

    joints = {"pelvis": sacrum}
    for foot, side in ((Foot.LEFT, 1.0), (Foot.RIGHT, -1.0)):
        name = foot.value
        ankle = np.stack(
            [
                sacrum[:, 0] + _relative_ap(phase[foot], spec),
                np.full(n_frames, side * spec.step_width / 2),
                _swing_height(phase[foot], spec),
            ],
            axis=-1,
        )
        hip = sacrum + [0.0, side * HIP_HALF_WIDTH, -0.05]
        knee = (hip + ankle) / 2 + [0.05, 0.0, 0.0]
        joints.update({f"{name}_ankle": ankle, f"{name}_hip": hip, f"{name}_knee": knee})

    up = np.array([0.0, 0.0, 1.0])
    for name, height in (("spine", 0.25), ("thorax", 0.5), ("neck", 0.6), ("head", 0.75)):
        joints[name] = sacrum + height * up
    for foot, side in ((Foot.LEFT, 1.0), (Foot.RIGHT, -1.0)):
        name = foot.value
        # Arms swing against the contralateral leg
        arm = 0.3 * _relative_ap(phase[foot.other], spec)[:, None] * [1.0, 0.0, 0.0]
        shoulder = joints["thorax"] + [0.0, side * SHOULDER_HALF_WIDTH, 0.05]
        joints[f"{name}_shoulder"] = shoulder
        joints[f"{name}_elbow"] = shoulder + [0.0, 0.0, -0.28] + arm / 2
        joints[f"{name}_wrist"] = shoulder + [0.0, 0.0, -0.55] + arm

    frames = np.stack([joints[n] for n in H36M17.joint_names], axis=1)
    if spec.noise_std > 0:
        rng = derive_rng(spec.seed, spec.walk_id, "noise")
        frames = frames + rng.normal(0.0, spec.noise_std, size=frames.shape)

    events = {}
    for foot, first in ((Foot.LEFT, t0), (Foot.RIGHT, t0 + period / 2)):
        events[foot] = (
            _event_frames(first, spec, n_frames),
            _event_frames(first + spec.stance_fraction * period, spec, n_frames),
        )

    walk = RawWalk(
        walk_id=spec.walk_id,
        participant=spec.participant,
        medication=spec.medication,
        label=spec.label,
        fps=spec.fps,
        layout=H36M17.layout_id,
        frames=frames,
    )
    return SyntheticWalk(walk, GaitEvents.from_feet(events[Foot.LEFT], events[Foot.RIGHT]))


# Score → (cadence, step length, step width), separated bands
LABEL_GAIT_BANDS = {
    0: (118.0, 0.68, 0.10),
    1: (104.0, 0.52, 0.13),
    2: (88.0, 0.36, 0.16),
}


@dataclasses.dataclass
class CohortSpec(object):
    n_participants: int = 24
    walks_per_participant: int = 10
    duration: float = 12.0
    fps: float = 30.0
    noise_std: float = 0.005
    jitter: float = 0.03
    """Relative uniform jitter applied per walk to every band parameter"""
    seed: int = 0

    def __post_init__(self):
        if self.n_participants < 1 or self.walks_per_participant < 2:
            raise ValidationError(
                "Cohort needs ≥ 1 participant and ≥ 2 walks per participant"
            )
        if not 0 <= self.jitter < 0.5:
            raise ValidationError("Cohort jitter must be in [0, 0.5)")


def synthesize_cohort(spec: CohortSpec) -> List[SyntheticWalk]:
    """Participants cycle through ON scores 0, 1, 2; OFF walks score one point worse, capped at 2.
    Half of each participant's walks are ON, half OFF."""
    walks = []
    for p in range(spec.n_participants):
        participant = f"P{p + 1:02d}"
        on_label = p % 3
        for w in range(spec.walks_per_participant):
            medication = MedicationState.ON if w % 2 == 0 else MedicationState.OFF
            label = on_label if medication is MedicationState.ON else min(on_label + 1, 2)
            walk_id = f"{participant}_{medication.name}_{w // 2 + 1:02d}"
            rng = derive_rng(spec.seed, walk_id, "cohort")
            cadence, step_length, step_width = (
                v * (1 + rng.uniform(-spec.jitter, spec.jitter))
                for v in LABEL_GAIT_BANDS[label]
            )
            walks.append(
                synthesize_gait(
                    SyntheticGaitSpec(
                        cadence=cadence,
                        step_length=step_length,
                        step_width=step_width,
                        duration=spec.duration,
                        fps=spec.fps,
                        noise_std=spec.noise_std,
                        seed=spec.seed,
                        walk_id=walk_id,
                        participant=participant,
                        medication=medication.name,
                        label=label,
                    )
                )
            )
    return walks


def write_cohort(
    walks: List[SyntheticWalk],
    directory: Union[str, Path],
    precision: int = 6,
) -> Tuple[Path, DatasetManifest]:
    """Write trajectory CSVs under ``directory/walks`` and ``directory/manifest.json``"""
    directory = Path(directory).expanduser().resolve()
    descriptors = []
    for walk, _ in walks:
        path = directory / "walks" / f"{walk.walk_id}.csv"
        write_walk(walk, path, precision=precision)
        descriptors.append(
            WalkDescriptor(
                path=path,
                walk_id=walk.walk_id,
                participant=walk.participant,
                medication=walk.medication,
                label=walk.label,
                fps=walk.fps,
                layout=walk.layout,
            )
        )
    manifest = DatasetManifest(descriptors, CoordinateConvention(), directory)
    manifest_path = directory / "manifest.json"
    manifest.save(manifest_path)
    logger.info(f"Wrote {len(descriptors)} synthetic walks to {directory}")
    return manifest_path, manifest
