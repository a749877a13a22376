"""
Wilcoxon signed-rank test for paired ON/OFF values.

Small samples use the exact null distribution of the positive rank sum.
Ranks are doubled so that average ranks of ties become integers, and the
distribution is built by convolution, one rank at a time, which counts the
same 2^n sign assignments as explicit enumeration.
"""
from __future__ import annotations

import dataclasses
import enum
from typing import Sequence, Tuple, Dict, Any

import numpy as np
from scipy.stats import rankdata, norm

from ..errors import DegenerateTest, ValidationError
from ..utils import NamedEnumMixin

EXACT_MAX_N = 25
DECIMALS = 12


class WilcoxonMethod(NamedEnumMixin, enum.Enum):
    EXACT = "exact"
    NORMAL_APPROX = "normal_approx"


@dataclasses.dataclass(frozen=True)
class WilcoxonResult(object):
    statistic: float
    p_value: float
    n_effective: int
    method: WilcoxonMethod
    w_plus: float
    w_minus: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "n_effective": self.n_effective,
            "method": self.method.value,
            "w_plus": self.w_plus,
            "w_minus": self.w_minus,
        }


def signed_ranks(differences: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """Nonzero differences and the average ranks of their magnitudes"""
    d = np.round(np.asarray(differences, dtype=np.float64), DECIMALS)
    if not np.isfinite(d).all():
        raise ValidationError("Differences must be finite")
    d = d[d != 0]
    return d, rankdata(np.abs(d))


def _exact_p_value(ranks: np.ndarray, statistic: float) -> float:
    doubled = np.rint(2 * ranks).astype(np.int64)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for r in doubled:
        counts[r:] = counts[r:] + counts[: total + 1 - r]

    w = np.arange(total + 1)
    extreme = np.minimum(w, total - w) <= int(round(2 * statistic))
    return float(counts[extreme].sum() / 2.0 ** len(ranks))


def _normal_p_value(ranks: np.ndarray, statistic: float) -> float:
    n = len(ranks)
    mean = n * (n + 1) / 4
    _, ties = np.unique(ranks, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24 - np.sum(ties ** 3 - ties) / 48
    z = max(abs(statistic - mean) - 0.5, 0.0) / np.sqrt(var)
    return float(min(1.0, 2 * norm.sf(z)))


def wilcoxon_signed_rank(pairs: Sequence[Tuple[float, float]]) -> WilcoxonResult:
    """Two-sided test on ``off - on`` for ``(on, off)`` pairs, statistic ``min(W+, W-)``"""
    pairs = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
    if len(pairs) == 0:
        raise ValidationError("Wilcoxon signed-rank test needs at least one pair")

    d, ranks = signed_ranks(pairs[:, 1] - pairs[:, 0])
    if len(d) == 0:
        raise DegenerateTest(f"All {len(pairs)} paired differences are zero")

    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    statistic = min(w_plus, w_minus)
    if len(d) <= EXACT_MAX_N:
        method = WilcoxonMethod.EXACT
        p_value = _exact_p_value(ranks, statistic)
    else:
        method = WilcoxonMethod.NORMAL_APPROX
        p_value = _normal_p_value(ranks, statistic)
    return WilcoxonResult(statistic, p_value, len(d), method, w_plus, w_minus)


def significance_stars(p_value: float) -> str:
    if p_value < 0.01:
        return "**"
    if p_value < 0.05:
        return "*"
    return ""
