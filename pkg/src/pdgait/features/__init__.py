from .steps import Step, step_sequence
from .spatiotemporal import (
    compute_step_time,
    compute_step_length_width,
    compute_walking_speed,
    compute_cadence,
)
from .mos import compute_mos, estimate_leg_length, single_support_intervals
from .filtering import lowpass
from .vector import (
    GaitFeatureVector,
    FEATURE_NAMES,
    FeaturesConfig,
    StepValues,
    aggregate_features,
    extract_features,
    features_frame,
    write_features_csv,
    read_features_csv,
)
