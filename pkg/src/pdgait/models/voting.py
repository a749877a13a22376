from collections import Counter
from typing import Sequence, Optional

import numpy as np

from ..errors import ValidationError


def majority_vote(
    clip_scores: Sequence[int], clip_probabilities: Optional[np.ndarray] = None
) -> int:
    """Most frequent clip score. Ties go to the tied score with the largest summed
    clip probability when probabilities are given, then to the lower score."""
    if len(clip_scores) == 0:
        raise ValidationError("Majority vote over an empty list of clip scores")
    counts = Counter(int(s) for s in clip_scores)
    top = max(counts.values())
    tied = sorted(s for s, c in counts.items() if c == top)
    if len(tied) > 1 and clip_probabilities is not None:
        sums = np.asarray(clip_probabilities, dtype=np.float64).sum(axis=0)
        best = max(sums[s] for s in tied)
        tied = [s for s in tied if sums[s] == best]
    return tied[0]
