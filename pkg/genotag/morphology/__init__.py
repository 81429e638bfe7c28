"""
Lexicon lookup and proper-noun heuristics.
"""

from genotag.morphology.analyze_tokens import (
    DEFAULT_GUESS,
    PROPER_NOUN,
    AnalyzedToken,
    Lexicon,
    Morphology,
    ProperNounDict,
    analyze,
    learn_proper_noun,
    load_lexicon,
    load_proper_nouns,
    load_suffix_rules,
    save_proper_nouns,
)

__all__ = [
    "DEFAULT_GUESS",
    "PROPER_NOUN",
    "AnalyzedToken",
    "Lexicon",
    "Morphology",
    "ProperNounDict",
    "analyze",
    "learn_proper_noun",
    "load_lexicon",
    "load_proper_nouns",
    "load_suffix_rules",
    "save_proper_nouns",
]
