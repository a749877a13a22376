import numpy as np
import pytest

from pdgait.datasets import (
    SyntheticGaitSpec,
    synthesize_gait,
    CohortSpec,
    synthesize_cohort,
    write_cohort,
)
from pdgait.skeleton import H36M17
from pdgait.structures import RawWalk


@pytest.fixture
def synthetic_walk():
    """Noiseless 10 s walk at cadence 120, step length 0.5 m, step width 0.12 m"""
    return synthesize_gait(SyntheticGaitSpec(duration=10.0, fps=30.0))


@pytest.fixture
def make_walk():
    def make(frames=None, n_frames=10, fps=30.0, layout="h36m17", **kwargs):
        if frames is None:
            rng = np.random.default_rng(0)
            frames = rng.normal(size=(n_frames, H36M17.joint_count, 3))
        fields = dict(walk_id="w", participant="p", medication="ON", label=0)
        fields.update(kwargs)
        return RawWalk(fps=fps, layout=layout, frames=frames, **fields)

    return make


@pytest.fixture(scope="session")
def small_cohort(tmp_path_factory):
    """9 participants (3 per ON score) with one ON and one OFF walk each, written to disk"""
    spec = CohortSpec(n_participants=9, walks_per_participant=2, duration=8.0, fps=30.0, seed=0)
    walks = synthesize_cohort(spec)
    manifest_path, manifest = write_cohort(walks, tmp_path_factory.mktemp("cohort"))
    return manifest_path, manifest, walks
