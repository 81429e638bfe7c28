"""
Accuracy scoring, schedule comparison and corpus ambiguity profiling.
"""

from genotag.evaluation.score_output import (
    AmbiguityProfile,
    GrowthPoint,
    SchemeResult,
    ScoreReport,
    ambiguity_profile,
    baseline_delta,
    compare_schedules,
    default_checkpoints,
    expand_schedules,
    genotype_growth,
    render_comparison,
    render_growth,
    score,
    threshold_range,
)

__all__ = [
    "AmbiguityProfile",
    "GrowthPoint",
    "SchemeResult",
    "ScoreReport",
    "ambiguity_profile",
    "baseline_delta",
    "compare_schedules",
    "default_checkpoints",
    "expand_schedules",
    "genotype_growth",
    "render_comparison",
    "render_growth",
    "score",
    "threshold_range",
]
