"""
Sentence segmentation, clitic splitting, compounds, accents and transliteration.
"""

from genotag.preprocessor.tokenize_text import (
    BEGIN_MARKER,
    DEFAULT_ABBREVIATIONS,
    DEFAULT_CLITICS,
    END_MARKER,
    MARKERS,
    Preprocessor,
    RawToken,
    Sentence,
    check_transliteration,
    detransliterate,
    is_all_caps,
    join_compounds,
    load_word_list,
    make_sentence,
    normalize_case,
    restore_accents,
    segment_sentences,
    split_clitics,
    transliterate,
)

__all__ = [
    "BEGIN_MARKER",
    "DEFAULT_ABBREVIATIONS",
    "DEFAULT_CLITICS",
    "END_MARKER",
    "MARKERS",
    "Preprocessor",
    "RawToken",
    "Sentence",
    "check_transliteration",
    "detransliterate",
    "is_all_caps",
    "join_compounds",
    "load_word_list",
    "make_sentence",
    "normalize_case",
    "restore_accents",
    "segment_sentences",
    "split_clitics",
    "transliterate",
]
