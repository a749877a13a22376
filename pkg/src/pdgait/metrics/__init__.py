from .classification import compute_metrics, ConfusionMatrix, MetricsReport, SCORE_LABELS
from .wilcoxon import (
    wilcoxon_signed_rank,
    WilcoxonResult,
    WilcoxonMethod,
    significance_stars,
    signed_ranks,
)
