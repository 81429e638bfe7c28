"""
Genotype n-gram decision tables and the strength measure.
"""

from genotag.statistics.decision_tables import (
    DEFAULT_THRESHOLDS,
    MODEL_HEADER,
    MODEL_VERSION,
    Decision,
    DecisionTable,
    Model,
    decide,
    load_model,
    save_model,
    strength_formula,
    train,
)

__all__ = [
    "DEFAULT_THRESHOLDS",
    "MODEL_HEADER",
    "MODEL_VERSION",
    "Decision",
    "DecisionTable",
    "Model",
    "decide",
    "load_model",
    "save_model",
    "strength_formula",
    "train",
]
