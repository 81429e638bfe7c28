"""
Schedules of disambiguation steps and the tagger that runs them.
"""

from genotag.pipeline.run_schedule import (
    AMBIGUOUS,
    BASELINE_SCHEDULE,
    RESOLVED,
    PlacedDecision,
    Schedule,
    Step,
    Tagger,
    apply_statistics,
    classify,
    gather_decisions,
    parse_schedule,
    reduce_output,
    resolve_conflicts,
    run,
)

__all__ = [
    "AMBIGUOUS",
    "BASELINE_SCHEDULE",
    "RESOLVED",
    "PlacedDecision",
    "Schedule",
    "Step",
    "Tagger",
    "apply_statistics",
    "classify",
    "gather_decisions",
    "parse_schedule",
    "reduce_output",
    "resolve_conflicts",
    "run",
]
