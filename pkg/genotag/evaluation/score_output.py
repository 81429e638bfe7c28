"""
Score tagged output against a gold corpus, compare tagging schemes and profile corpus ambiguity.
"""

import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, computed_field
from tqdm import tqdm

from genotag.corpus_io import TaggedToken
from genotag.errors import AlignmentError, CorpusFormatError, ScheduleError
from genotag.morphology.analyze_tokens import AnalyzedToken

logger = logging.getLogger(__name__)

# genotype sizes from this value up share one histogram bucket
LARGEST_BUCKET = 8

Token = Union[AnalyzedToken, TaggedToken]


def _pct(part: int, whole: int) -> float:
    return 100.0 * part / whole if whole else 0.0


def _is_word(surface: str) -> bool:
    return any(c.isalnum() for c in surface)


class ScoreReport(BaseModel):
    """Correct, incorrect and still-ambiguous token counts."""

    total: int = 0
    correct: int = 0
    incorrect: int = 0
    ambiguous: int = 0
    gold_in_candidates: int = 0

    @computed_field
    @property
    def correct_pct(self) -> float:
        return _pct(self.correct, self.total)

    @computed_field
    @property
    def incorrect_pct(self) -> float:
        return _pct(self.incorrect, self.total)

    @computed_field
    @property
    def ambiguous_pct(self) -> float:
        return _pct(self.ambiguous, self.total)

    @computed_field
    @property
    def oracle_recall(self) -> float:
        """Share of tokens whose remaining candidates still include the gold tag."""
        return _pct(self.gold_in_candidates, self.total)

    def render(self) -> str:
        rows = [
            ("tokens", self.total, 100.0 if self.total else 0.0),
            ("correct", self.correct, self.correct_pct),
            ("incorrect", self.incorrect, self.incorrect_pct),
            ("ambiguous", self.ambiguous, self.ambiguous_pct),
            ("oracle recall", self.gold_in_candidates, self.oracle_recall),
        ]
        return "\n".join(f"{name:<14}{count:>10}{pct:>10.2f}%" for name, count, pct in rows) + "\n"

    def render_tsv(self) -> str:
        lines = ["measure\tcount\tpercent"]
        lines.append(f"correct\t{self.correct}\t{self.correct_pct:.2f}")
        lines.append(f"incorrect\t{self.incorrect}\t{self.incorrect_pct:.2f}")
        lines.append(f"ambiguous\t{self.ambiguous}\t{self.ambiguous_pct:.2f}")
        lines.append(f"oracle_recall\t{self.gold_in_candidates}\t{self.oracle_recall:.2f}")
        lines.append(f"total\t{self.total}\t100.00")
        return "\n".join(lines) + "\n"


def score(system: Iterable[Sequence[Token]], gold: Iterable[Sequence[TaggedToken]]) -> ScoreReport:
    """Compare system output to gold, token by token, markers excluded.

    Args:
        system: Tagged sentences (analyzed tokens or tagged output read back)
        gold: Gold sentences, one tag per token

    Returns:
        The score report

    Raises:
        AlignmentError: At the first token whose surface differs, or if one side is longer
        CorpusFormatError: If a gold token carries more than one tag
    """
    sys_tokens = [t for sentence in system for t in sentence if not t.is_marker]
    gold_tokens = [t for sentence in gold for t in sentence if not t.is_marker]
    report = ScoreReport()

    for index, (s, g) in enumerate(zip(sys_tokens, gold_tokens)):
        if s.surface != g.surface:
            raise AlignmentError(f"token {index + 1}: system has {s.surface!r}, gold has {g.surface!r}",
                                 line=getattr(s, "line", None) or None)
        if len(g.candidates) != 1:
            raise CorpusFormatError(f"gold token {g.surface!r} has several tags {g.candidates}", line=g.line or None)
        gold_tag = g.candidates.tags[0]
        report.total += 1
        if gold_tag in s.candidates:
            report.gold_in_candidates += 1
        if len(s.candidates) > 1:
            report.ambiguous += 1
        elif gold_tag in s.candidates:
            report.correct += 1
        else:
            report.incorrect += 1

    if len(sys_tokens) != len(gold_tokens):
        shorter = "system output" if len(sys_tokens) < len(gold_tokens) else "gold corpus"
        raise AlignmentError(f"{shorter} ends after {min(len(sys_tokens), len(gold_tokens))} tokens "
                             f"({len(sys_tokens)} system vs {len(gold_tokens)} gold)")
    logger.info(f"Scored {report.total} tokens: {report.correct_pct:.2f}% correct")
    return report


class AmbiguityProfile(BaseModel):
    """How many tokens carry genotypes of each size."""

    histogram: Dict[int, int]
    total_tokens: int
    total_tags: int

    @computed_field
    @property
    def ambiguity_factor(self) -> float:
        """Average genotype size (0.0 for an empty corpus)."""
        return self.total_tags / self.total_tokens if self.total_tokens else 0.0

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "AmbiguityProfile":
        sizes = np.fromiter(sizes, dtype=np.int64)
        if sizes.size and sizes.min() < 1:
            raise ValueError("genotype sizes must be >= 1")
        buckets = np.bincount(np.minimum(sizes, LARGEST_BUCKET), minlength=LARGEST_BUCKET + 1)
        histogram = {size: int(buckets[size]) for size in range(1, LARGEST_BUCKET + 1)}
        return cls(histogram=histogram, total_tokens=int(sizes.size), total_tags=int(sizes.sum()))

    def percent(self, size: int) -> float:
        return _pct(self.histogram.get(size, 0), self.total_tokens)

    def render(self) -> str:
        lines = ["tags\ttokens\tpercent"]
        for size in range(1, LARGEST_BUCKET + 1):
            label = f"{size}+" if size == LARGEST_BUCKET else str(size)
            lines.append(f"{label}\t{self.histogram.get(size, 0)}\t{self.percent(size):.2f}")
        lines.append(f"total tokens\t{self.total_tokens}")
        lines.append(f"total tags\t{self.total_tags}")
        lines.append(f"ambiguity factor\t{self.ambiguity_factor:.4f}")
        return "\n".join(lines) + "\n"


def ambiguity_profile(analyzed: Iterable[Sequence[AnalyzedToken]]) -> AmbiguityProfile:
    """Profile genotype sizes over words; markers and punctuation are left out."""
    return AmbiguityProfile.from_sizes(
        len(token.genotype) for sentence in analyzed for token in sentence
        if not token.is_marker and _is_word(token.surface)
    )


class GrowthPoint(BaseModel):
    tokens: int
    words: int
    genotypes: int


def genotype_growth(analyzed: Iterable[Sequence[AnalyzedToken]], checkpoints: Sequence[int]) -> List[GrowthPoint]:
    """Distinct surfaces and genotypes seen within each prefix of the corpus.

    Args:
        analyzed: Analyzed sentences; markers are not counted
        checkpoints: Prefix lengths in tokens, clamped to the corpus size

    Returns:
        One point per checkpoint, in checkpoint order
    """
    tokens = [t for sentence in analyzed for t in sentence if not t.is_marker]
    wanted = sorted(set(min(max(0, c), len(tokens)) for c in checkpoints))
    by_prefix: Dict[int, GrowthPoint] = {}
    words, genotypes = set(), set()
    position = 0
    for prefix in wanted:
        while position < prefix:
            words.add(tokens[position].surface)
            genotypes.add(tokens[position].genotype)
            position += 1
        by_prefix[prefix] = GrowthPoint(tokens=prefix, words=len(words), genotypes=len(genotypes))
    return [by_prefix[min(max(0, c), len(tokens))] for c in checkpoints]


def default_checkpoints(total: int, count: int = 5) -> List[int]:
    """``count`` evenly spaced prefix lengths ending at ``total``."""
    if total <= 0:
        return [0]
    return sorted(set(int(round(x)) for x in np.linspace(0, total, count + 1)[1:]))


def render_growth(points: Sequence[GrowthPoint]) -> str:
    lines = ["tokens\twords\tgenotypes"]
    lines.extend(f"{p.tokens}\t{p.words}\t{p.genotypes}" for p in points)
    return "\n".join(lines) + "\n"


def baseline_delta(report: ScoreReport, baseline: Optional[ScoreReport]) -> Optional[float]:
    """Accuracy gain over a baseline report, in percentage points."""
    if baseline is None:
        return None
    return report.correct_pct - baseline.correct_pct


# stands for each threshold of a sweep inside a schedule template
THRESHOLD_PLACEHOLDER = "{t}"


class SchemeResult(BaseModel):
    """Score of one tagging scheme in a comparison."""

    schedule: str
    report: ScoreReport


def threshold_range(text: str) -> List[float]:
    """Parse ``start:stop:step`` into thresholds, both ends included.

    Raises:
        ValueError: If the range is malformed, empty or leaves [0, 100]
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"range {text!r} is empty")
    if start < 0 or stop > 100:
        raise ValueError(f"range {text!r} leaves [0, 100]")
    return [round(float(v), 6) for v in np.arange(start, stop + step / 2, step)]


def expand_schedules(templates: Sequence[str], thresholds: Optional[Sequence[float]] = None) -> List[str]:
    """Instantiate every template once per threshold; plain schedules pass through once."""
    schedules: List[str] = []
    for template in templates:
        if THRESHOLD_PLACEHOLDER not in template:
            schedules.append(template)
            continue
        if not thresholds:
            raise ScheduleError(f"schedule {template!r} needs a threshold range")
        schedules.extend(template.replace(THRESHOLD_PLACEHOLDER, f"{t:g}") for t in thresholds)
    return schedules


def compare_schedules(schedules: Sequence[str], tag_with: Callable[[str], Sequence[Sequence[Token]]],
                      gold: Sequence[Sequence[TaggedToken]], progress: bool = False) -> List[SchemeResult]:
    """Tag held-out text under each schedule and score every run against ``gold``.

    Args:
        schedules: Schedules to compare, in report order
        tag_with: Tags the held-out text under one schedule
        gold: Gold sentences aligned with the tagged output
        progress: Show a progress bar

    Returns:
        One result per schedule
    """
    results = []
    for schedule in tqdm(schedules, desc="Comparing schedules", disable=not progress):
        results.append(SchemeResult(schedule=schedule, report=score(tag_with(schedule), gold)))
        logger.info(f"{schedule}: {results[-1].report.correct_pct:.2f}% correct, "
                    f"{results[-1].report.ambiguous_pct:.2f}% ambiguous")
    return results


def render_comparison(results: Sequence[SchemeResult], tsv: bool = False) -> str:
    columns = ("correct", "incorrect", "ambiguous", "oracle_recall")
    rows = [(r.schedule, (r.report.correct_pct, r.report.incorrect_pct, r.report.ambiguous_pct, r.report.oracle_recall))
            for r in results]
    if tsv:
        lines = ["schedule\t" + "\t".join(columns)]
        lines.extend(name + "".join(f"\t{v:.2f}" for v in values) for name, values in rows)
        return "\n".join(lines) + "\n"
    width = max([len("schedule")] + [len(name) for name, _ in rows]) + 2
    lines = [f"{'schedule':<{width}}" + "".join(f"{c:>14}" for c in columns)]
    lines.extend(f"{name:<{width}}" + "".join(f"{v:>13.2f}%" for v in values) for name, values in rows)
    return "\n".join(lines) + "\n"
