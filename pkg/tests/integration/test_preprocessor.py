"""Tests for sentence segmentation and token-level preprocessing."""

import numpy as np
import pytest

from genotag.preprocessor.tokenize_text import (
    BEGIN_MARKER,
    END_MARKER,
    TRANSLITERATION,
    Preprocessor,
    RawToken,
    check_transliteration,
    clashes_with_markers,
    detransliterate,
    join_compounds,
    make_sentence,
    normalize_case,
    restore_accents,
    segment_sentences,
    split_clitics,
    transliterate,
)


def test_segment_two_sentences():
    sentences = segment_sentences("Il dort. Elle lit.")
    assert len(sentences) == 2
    assert sentences[0].surfaces() == [BEGIN_MARKER, "Il", "dort", ".", END_MARKER]
    assert sentences[1].surfaces() == [BEGIN_MARKER, "Elle", "lit", ".", END_MARKER]

def test_segment_empty_input():
    assert segment_sentences("") == []
    assert segment_sentences("   \n\n  ") == []

def test_abbreviation_keeps_sentence_open():
    sentences = segment_sentences("M. Dupont dort.")
    assert len(sentences) == 1
    assert sentences[0].surfaces()[1] == "M."

def test_closing_quote_stays_with_sentence():
    sentences = segment_sentences("Il a dit « non. » Elle part.")
    assert len(sentences) == 2
    assert sentences[0].surfaces()[-2] == "»"

def test_paragraph_break_closes_sentence():
    sentences = segment_sentences("Un titre\n\nIl dort.")
    assert len(sentences) == 2
    assert sentences[0].surfaces() == [BEGIN_MARKER, "Un", "titre", END_MARKER]

def test_sentence_initial_flags():
    sentence = segment_sentences("Paris dort.")[0]
    first = sentence.words[0]
    assert first.sentence_initial and first.capitalized
    assert not sentence.words[1].sentence_initial

def test_opening_quote_is_not_sentence_initial():
    sentence = segment_sentences("Il dort. « Elle lit. »")[1]
    assert sentence.surfaces() == [BEGIN_MARKER, "«", "Elle", "lit", ".", "»", END_MARKER]
    quote, first = sentence.words[:2]
    assert not quote.sentence_initial
    assert first.sentence_initial, "The first word after an opening quote starts the sentence"
    assert make_sentence(["(", "-", "Non", "."]).words[2].sentence_initial

@pytest.mark.parametrize("text, first", [
    ("Quoi ?! Il dort.", ["Quoi", "?", "!"]),
    ("Quoi ?.. Il dort.", ["Quoi", "?", ".", "."]),
    ("Non !! Il dort.", ["Non", "!", "!"]),
])
def test_repeated_terminal_marks_stay_together(text, first):
    sentences = segment_sentences(text)
    assert len(sentences) == 2, f"{text!r} gave {[s.surfaces() for s in sentences]}"
    assert sentences[0].surfaces() == [BEGIN_MARKER, *first, END_MARKER]
    assert sentences[1].surfaces()[1] == "Il"

def test_split_clitics():
    assert [t.surface for t in split_clitics(RawToken("dit-elle", 1))] == ["dit", "elle"]
    assert [t.surface for t in split_clitics(RawToken("a-t-il", 1))] == ["a", "t", "il"]
    assert [t.surface for t in split_clitics(RawToken("porte-avions", 1))] == ["porte-avions"]
    assert [t.surface for t in split_clitics(RawToken("arrière-grand-père", 1))] == ["arrière-grand-père"]

def test_join_compounds():
    tokens = [RawToken("bien", 1), RawToken("que", 2), RawToken("dormir", 3)]
    joined = join_compounds(tokens, frozenset({"bien_que"}))
    assert [t.surface for t in joined] == ["bien_que", "dormir"]
    assert join_compounds(tokens, frozenset()) == tokens
    untouched = join_compounds([RawToken("bien", 1), RawToken("dormir", 2)], frozenset({"bien_que"}))
    assert [t.surface for t in untouched] == ["bien", "dormir"]

@pytest.mark.parametrize("word,expected", [
    ("Etre", "Être"),
    ("A", "À"),
    ("Ecole", "École"),
    ("Etat", "État"),
    ("Elle", "Elle"),
    ("Paris", "Paris"),
])
def test_restore_accents(word, expected):
    assert restore_accents(word) == expected

def test_transliterate_examples():
    assert transliterate("côtés") == "co^te's"
    assert transliterate("garçon") == "garc,on"
    assert detransliterate("e`ve") == "ève"
    assert transliterate("maison") == "maison"

def test_transliteration_round_trip():
    """detransliterate inverts transliterate on any French word."""
    rng = np.random.default_rng(0)
    alphabet = list("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ") + list(TRANSLITERATION)
    for _ in range(10000):
        length = int(rng.integers(1, 12))
        word = "".join(rng.choice(alphabet, size=length))
        assert detransliterate(transliterate(word)) == word, f"Round trip failed for {word!r}"

def test_check_transliteration():
    assert check_transliteration("co^te's") == []
    assert check_transliteration("aujourd'hui") == [], "Apostrophes are always legal"
    assert check_transliteration("b^a"), "'^' cannot follow 'b'"

def test_clashes_with_markers():
    assert not clashes_with_markers("côté")
    assert clashes_with_markers("e`")

def test_normalize_case():
    assert normalize_case("SNCF") == "Sncf"
    assert normalize_case("Paris") == "Paris"
    assert normalize_case("A") == "A"

def test_make_sentence_adds_markers():
    sentence = make_sentence(["Le", "chat", "."])
    assert sentence.surfaces() == [BEGIN_MARKER, "Le", "chat", ".", END_MARKER]
    assert sentence.words[0].sentence_initial
    assert make_sentence([BEGIN_MARKER, "x", END_MARKER]).surfaces() == [BEGIN_MARKER, "x", END_MARKER]

def test_preprocessor_full_chain(lexicon):
    preprocessor = Preprocessor(compounds=lexicon.compound_keys)
    sentences = preprocessor.tokenize("La teneur moyenne, bien que délicate à calculer.")
    surfaces = sentences[0].surfaces()
    print(f"\nTokens: {surfaces}")
    assert surfaces == [BEGIN_MARKER, "La", "teneur", "moyenne", ",", "bien_que", "de'licate",
                        "a`", "calculer", ".", END_MARKER]

def test_preprocessor_elision_and_clitics():
    sentences = Preprocessor().tokenize("Elle l'appelle, dit-elle.")
    assert sentences[0].surfaces() == [BEGIN_MARKER, "Elle", "l'", "appelle", ",", "dit", "elle", ".", END_MARKER]

def test_preprocessor_keeps_inner_apostrophe():
    sentences = Preprocessor().tokenize("Il part aujourd'hui.")
    assert "aujourd'hui" in sentences[0].surfaces()
