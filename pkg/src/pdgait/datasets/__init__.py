from .manifest import WalkDescriptor, DatasetManifest, load_manifest, parse_manifest
from .trajectory import load_walk, read_trajectory, write_walk, fill_gaps, MAX_GAP_FRAMES
from .synthetic import (
    SyntheticGaitSpec,
    SyntheticWalk,
    synthesize_gait,
    CohortSpec,
    synthesize_cohort,
    write_cohort,
)
