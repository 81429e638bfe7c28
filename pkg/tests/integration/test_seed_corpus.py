"""Tests for the synthetic corpus and tagging quality on held-out data."""

import pytest

from genotag.constraints.negative_rules import parse_rule
from genotag.core.tags import make_genotype
from genotag.corpus_io import TaggedToken, read_training_corpus
from genotag.evaluation.score_output import compare_schedules, expand_schedules, render_comparison, score, threshold_range
from genotag.morphology.analyze_tokens import Morphology
from genotag.pipeline.run_schedule import BASELINE_SCHEDULE, Tagger, parse_schedule
from genotag.preprocessor.tokenize_text import make_sentence
from genotag.seed_corpus import SEED_LEXICON, SEED_RULES, generate_sentences, seed_lexicon, write_seed_corpus
from genotag.statistics.decision_tables import train


@pytest.fixture(scope="module")
def seed_setup():
    """A model trained on 2000 synthetic sentences and 500 held-out sentences."""
    lexicon = seed_lexicon()
    model = train(generate_sentences(2000, seed=1), lexicon)
    heldout = generate_sentences(500, seed=2)
    sentences = [make_sentence([t.surface for t in s]) for s in heldout]
    gold = [[TaggedToken(t.surface, make_genotype([t.gold])) for t in s] for s in heldout]
    rules = [parse_rule(r) for r in SEED_RULES]
    return lexicon, model, rules, sentences, gold


def accuracy(seed_setup, schedule):
    lexicon, model, rules, sentences, gold = seed_setup
    tagged = Tagger(parse_schedule(schedule), Morphology(lexicon), rules, model).run(sentences)
    report = score(tagged, gold)
    print(f"\n{schedule}: {report.correct_pct:.2f}% correct, {report.ambiguous_pct:.2f}% ambiguous", end="")
    return report.correct_pct


def test_generation_is_seeded():
    assert generate_sentences(20, seed=7) == generate_sentences(20, seed=7)
    assert generate_sentences(20, seed=7) != generate_sentences(20, seed=8)

def test_gold_tags_lie_in_the_lexicon():
    for sentence in generate_sentences(200, seed=3):
        assert sentence[-1].surface == "."
        assert sentence[0].surface[:1].isupper()
        for token in sentence:
            assert token.gold.text in SEED_LEXICON[token.surface.lower()]

def test_write_seed_corpus(tmp_path):
    paths = write_seed_corpus(tmp_path / "seed", sentences=30, seed=4)
    assert set(paths) == {"lexicon", "rules", "train", "heldout"}
    train_corpus = read_training_corpus(paths["train"])
    assert len(train_corpus) == 30
    assert read_training_corpus(paths["heldout"]) != train_corpus

def test_full_schedule_beats_baseline(seed_setup):
    full = accuracy(seed_setup, "M,D:3,B,U:90")
    baseline = accuracy(seed_setup, BASELINE_SCHEDULE)
    assert full > baseline, "Constraints plus bigram decisions must beat the majority-tag baseline"

def test_bigram_step_never_hurts(seed_setup):
    with_bigrams = accuracy(seed_setup, "M,D:3,B,U:90")
    without = accuracy(seed_setup, "M,D:3,U:90")
    assert with_bigrams >= without

def test_threshold_sweep_trades_errors_for_ambiguity(seed_setup):
    lexicon, model, rules, sentences, gold = seed_setup

    def tag_with(schedule):
        return Tagger(parse_schedule(schedule), Morphology(lexicon), rules, model).run(sentences)

    schedules = expand_schedules(["M,U:0", "M,A:{t}"], threshold_range("0:100:50"))
    assert schedules == ["M,U:0", "M,A:0", "M,A:50", "M,A:100"]
    results = compare_schedules(schedules, tag_with, gold)
    print(f"\n{render_comparison(results)}", end="")
    lowest, highest = results[1].report, results[-1].report
    assert highest.ambiguous > lowest.ambiguous, "A higher threshold leaves more tokens ambiguous"
    assert highest.incorrect <= lowest.incorrect, "A higher threshold never adds errors"
    assert highest.incorrect == 0, "Nothing is decided at threshold 100"
