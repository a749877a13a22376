from .folds import FoldPlan, plan_losocv, plan_standard_cv, walk_table, participant_labels
from .sources import FeatureSource, EmbeddingSource, baseline_source
from .pipeline import (
    EvaluationConfig,
    Protocol,
    WalkPrediction,
    Exclusion,
    FoldResult,
    run_fold,
    run_protocol,
    predictions_frame,
)
from .onoff import Aggregation, OnOffAnalysis, on_off_analysis, participant_scores
from .report import (
    MethodResult,
    MethodSummary,
    summarize_method,
    leaderboard,
    wilcoxon_table,
    wilcoxon_rows,
    per_class_table,
    build_report,
    write_report,
    write_tables,
    slug,
    format_leaderboard,
    format_wilcoxon,
)
from .figures import plot_confusion_matrix, plot_method_confusions
