from .walk import (
    MedicationState,
    Foot,
    CoordinateConvention,
    RawWalk,
    check_label,
    AXIS_NAMES,
)
from .layout import JointLayout, JointMapping, CopyFrom, WeightedAverage, ROLES
from .clip import Clip, CLIP_LENGTH, CLIP_FPS
from .events import GaitEvents, PhaseSignal
