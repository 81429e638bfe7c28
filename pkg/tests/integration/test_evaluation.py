"""Tests for scoring, the ambiguity profile and genotype growth."""

import numpy as np
import pytest

from genotag.core.tags import make_genotype
from genotag.corpus_io import TaggedToken, read_tagged, read_token_stream
from genotag.errors import AlignmentError, CorpusFormatError, ScheduleError
from genotag.evaluation.score_output import (
    AmbiguityProfile,
    SchemeResult,
    ScoreReport,
    ambiguity_profile,
    baseline_delta,
    default_checkpoints,
    expand_schedules,
    genotype_growth,
    render_comparison,
    render_growth,
    score,
    threshold_range,
)
from genotag.morphology.analyze_tokens import AnalyzedToken, Morphology
from genotag.pipeline.run_schedule import Tagger, parse_schedule

LARGE_CORPUS_SIZE_COUNTS = [54570, 24636, 11058, 634, 856, 2221, 590, 317]


def tagged(*rows):
    return [TaggedToken(surface, make_genotype(tags.split())) for surface, tags in rows]


def test_score_counts():
    gold = [tagged(*[(f"w{i}", "A") for i in range(10)])]
    system = [tagged(*[(f"w{i}", "A") for i in range(9)], ("w9", "A B"))]
    report = score(system, gold)
    print(f"\n{report.render()}")
    assert (report.correct, report.incorrect, report.ambiguous) == (9, 0, 1)
    assert report.correct_pct == pytest.approx(90.0)
    assert report.ambiguous_pct == pytest.approx(10.0)
    assert report.oracle_recall == pytest.approx(100.0)

def test_score_incorrect():
    report = score([tagged(("a", "B"), ("b", "A C"))], [tagged(("a", "A"), ("b", "B"))])
    assert report.incorrect == 1 and report.ambiguous == 1
    assert report.gold_in_candidates == 0
    assert report.correct_pct + report.incorrect_pct + report.ambiguous_pct == pytest.approx(100.0)

def test_score_ignores_markers():
    system = [tagged(("<S>", "^"), ("a", "A"), ("</S>", "$"))]
    assert score(system, [tagged(("a", "A"))]).total == 1

def test_score_identical_files(desk_corpus_path):
    gold = read_tagged(desk_corpus_path)
    report = score(gold, gold)
    assert report.correct_pct == 100.0
    assert report.incorrect == 0 and report.ambiguous == 0

def test_score_misaligned_surface():
    with pytest.raises(AlignmentError) as exc:
        score([tagged(("a", "A"), ("c", "A"))], [tagged(("a", "A"), ("b", "A"))])
    assert "token 2" in str(exc.value)

def test_score_length_mismatch():
    with pytest.raises(AlignmentError):
        score([tagged(("a", "A"))], [tagged(("a", "A"), ("b", "A"))])

def test_gold_must_be_resolved():
    with pytest.raises(CorpusFormatError):
        score([tagged(("a", "A"))], [tagged(("a", "A B"))])

def test_render_tsv():
    report = ScoreReport(total=4, correct=3, incorrect=1, ambiguous=0, gold_in_candidates=3)
    lines = report.render_tsv().splitlines()
    assert lines[0] == "measure\tcount\tpercent"
    assert "correct\t3\t75.00" in lines

def test_baseline_delta():
    report = ScoreReport(total=10, correct=9)
    baseline = ScoreReport(total=10, correct=7)
    assert baseline_delta(report, baseline) == pytest.approx(20.0)
    assert baseline_delta(report, None) is None

def test_ambiguity_profile_of_large_corpus():
    sizes = np.repeat(np.arange(1, 9), LARGE_CORPUS_SIZE_COUNTS)
    profile = AmbiguityProfile.from_sizes(sizes)
    print(f"\n{profile.render()}")
    assert profile.total_tokens == 94882
    assert profile.total_tags == 163824
    assert profile.ambiguity_factor == pytest.approx(1.7266, abs=1e-4)
    assert profile.histogram[1] == 54570
    assert sum(profile.histogram.values()) == profile.total_tokens
    assert "8+" in profile.render()
    assert "1.7266" in profile.render()

def test_profile_buckets_large_genotypes():
    profile = AmbiguityProfile.from_sizes([1, 9, 12])
    assert profile.histogram[8] == 2
    assert profile.total_tags == 22

def test_profile_edge_cases():
    assert AmbiguityProfile.from_sizes([1]).ambiguity_factor == 1.0
    assert AmbiguityProfile.from_sizes([1, 3]).ambiguity_factor == 2.0
    assert AmbiguityProfile.from_sizes([]).ambiguity_factor == 0.0
    with pytest.raises(ValueError):
        AmbiguityProfile.from_sizes([0])

def test_profile_of_desk_corpus(lexicon, desk_corpus_path):
    analyzed = Tagger(parse_schedule("M"), Morphology(lexicon)).run(read_token_stream(desk_corpus_path))
    profile = ambiguity_profile(analyzed)
    assert 0 < profile.total_tokens
    assert profile.ambiguity_factor >= 1.0
    assert profile.total_tags >= profile.total_tokens

def test_growth_edge_cases():
    same = [[AnalyzedToken("le", make_genotype(["BD3S", "RDM"])) for _ in range(50)]]
    assert genotype_growth(same, [0])[0].model_dump() == {"tokens": 0, "words": 0, "genotypes": 0}
    point = genotype_growth(same, [50])[0]
    assert (point.tokens, point.words, point.genotypes) == (50, 1, 1)
    assert genotype_growth(same, [500])[0].tokens == 50, "Checkpoints beyond the corpus are clamped"

def test_growth_on_desk_corpus(lexicon, desk_corpus_path):
    analyzed = Tagger(parse_schedule("M"), Morphology(lexicon)).run(read_token_stream(desk_corpus_path))
    total = sum(1 for s in analyzed for t in s if not t.is_marker)
    points = genotype_growth(analyzed, default_checkpoints(total))
    print(f"\n{render_growth(points)}")
    assert points[-1].tokens == total
    for p in points:
        assert p.genotypes <= p.words <= p.tokens
    for a, b in zip(points, points[1:]):
        assert a.words <= b.words and a.genotypes <= b.genotypes

def test_genotypes_grow_slower_than_words():
    """Genotype inventories saturate long before vocabularies do."""
    rng = np.random.default_rng(3)
    genotypes = [make_genotype([f"T{k}", f"T{k + 1}"]) for k in range(10)]
    vocabulary = [(f"mot{i}", genotypes[i % 10]) for i in range(2000)]
    picks = rng.integers(0, len(vocabulary), size=5000)
    corpus = [[AnalyzedToken(*vocabulary[int(i)]) for i in picks]]
    early, late = genotype_growth(corpus, [1000, 5000])
    word_growth = late.words / early.words
    genotype_growth_rate = late.genotypes / early.genotypes
    assert genotype_growth_rate < word_growth
    assert late.genotypes == 10

def test_default_checkpoints():
    assert default_checkpoints(100) == [20, 40, 60, 80, 100]
    assert default_checkpoints(0) == [0]
    assert default_checkpoints(3, count=5)[-1] == 3

def test_threshold_range():
    assert threshold_range("50:90:10") == [50.0, 60.0, 70.0, 80.0, 90.0]
    assert threshold_range("75:75:5") == [75.0]
    assert threshold_range("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]

@pytest.mark.parametrize("text", ["50:90", "90:50:10", "50:90:0", "-10:50:10", "50:110:10", "a:b:c"])
def test_threshold_range_rejects(text):
    with pytest.raises(ValueError):
        threshold_range(text)

def test_expand_schedules():
    assert expand_schedules(["M,U:0", "M,D:3,B:{t},U:90"], [60.0, 80.0]) == \
        ["M,U:0", "M,D:3,B:60,U:90", "M,D:3,B:80,U:90"]
    assert expand_schedules(["M,B"]) == ["M,B"]
    with pytest.raises(ScheduleError):
        expand_schedules(["M,A:{t}"])

def test_render_comparison():
    results = [
        SchemeResult(schedule="M,U:0", report=ScoreReport(total=10, correct=8, incorrect=2)),
        SchemeResult(schedule="M,D:3,B:75,U:90", report=ScoreReport(total=10, correct=7, ambiguous=3,
                                                                    gold_in_candidates=10)),
    ]
    lines = render_comparison(results, tsv=True).splitlines()
    assert lines[0] == "schedule\tcorrect\tincorrect\tambiguous\toracle_recall"
    assert lines[1] == "M,U:0\t80.00\t20.00\t0.00\t0.00"
    assert lines[2] == "M,D:3,B:75,U:90\t70.00\t0.00\t30.00\t100.00"
    text = render_comparison(results)
    print(f"\n{text}", end="")
    assert "30.00%" in text and text.splitlines()[0].startswith("schedule")
