"""
Compose the disambiguation operators in a user-chosen order.

A schedule is a comma-separated list of steps:

    M        morphological analysis (first, exactly once)
    D:k      negative constraints, k sweeps
    T3[:θ]   trigram decisions at strength threshold θ
    B[:θ]    bigram decisions
    U:θ      unigram decisions
    A[:θ]    trigram, bigram and unigram decisions arbitrated together
    R        tagset reduction (at most once)

``M,D:3,B:75,U:90,R`` analyses, applies three constraint sweeps, then bigram
and unigram decisions, then maps the result to the small tagset.
"""

import asyncio
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from genotag.constraints.negative_rules import DEFAULT_ITERATIONS, NegativeRule, RuleLog, count_anchors, propagate
from genotag.core.tags import TagsetMap
from genotag.errors import MissingResource, ScheduleError
from genotag.morphology.analyze_tokens import AnalyzedToken, Lexicon, Morphology, ProperNounDict
from genotag.preprocessor.tokenize_text import Sentence
from genotag.statistics.decision_tables import DEFAULT_THRESHOLDS, Decision, Model, decide

logger = logging.getLogger(__name__)

STEP_ORDERS = {"T3": (3,), "B": (2,), "U": (1,), "A": (3, 2, 1)}
STEP_CODES = ("M", "D", "R") + tuple(STEP_ORDERS)
DEFAULT_STEP_THRESHOLDS = {"T3": DEFAULT_THRESHOLDS[3], "B": DEFAULT_THRESHOLDS[2],
                           "U": DEFAULT_THRESHOLDS[1], "A": DEFAULT_THRESHOLDS[1]}

BASELINE_SCHEDULE = "M,U:0"

RESOLVED = "resolved"
AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class Step:
    code: str
    param: Optional[float] = None

    @property
    def is_statistical(self) -> bool:
        return self.code in STEP_ORDERS

    def __str__(self) -> str:
        if self.param is None:
            return self.code
        return f"{self.code}:{self.param:g}"


@dataclass(frozen=True)
class Schedule:
    """Ordered steps; ``str(parse_schedule(s))`` prints every parameter explicitly."""

    steps: Tuple[Step, ...]

    def __post_init__(self):
        codes = [s.code for s in self.steps]
        if not codes or codes[0] != "M":
            raise ScheduleError("schedule must start with M")
        if codes.count("M") != 1:
            raise ScheduleError("M must appear exactly once")
        if codes.count("R") > 1:
            raise ScheduleError("R may appear at most once")

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def needs_rules(self) -> bool:
        return any(s.code == "D" for s in self.steps)

    @property
    def needs_model(self) -> bool:
        return any(s.is_statistical for s in self.steps)

    @property
    def needs_tagset_map(self) -> bool:
        return any(s.code == "R" for s in self.steps)


def parse_schedule(s: str, thresholds: Optional[Dict[str, float]] = None,
                   iterations: int = DEFAULT_ITERATIONS) -> Schedule:
    """Parse a schedule string.

    Args:
        s: Comma-separated step codes, e.g. ``M,D:3,B,U:90,R``
        thresholds: Defaults for statistical steps given without a threshold
        iterations: Default sweep count for ``D``

    Returns:
        The schedule, every parameter filled in

    Raises:
        ScheduleError: On an unknown code, a bad parameter or an illegal composition
    """
    defaults = dict(DEFAULT_STEP_THRESHOLDS)
    defaults.update(thresholds or {})
    steps: List[Step] = []
    for item in s.split(","):
        item = item.strip()
        code, _, raw_param = item.partition(":")
        code = code.strip().upper()
        if code not in STEP_CODES:
            raise ScheduleError(f"unknown step {item!r} in schedule {s!r}")
        if code in ("M", "R"):
            if raw_param:
                raise ScheduleError(f"step {code} takes no parameter")
            steps.append(Step(code))
        elif code == "D":
            k = _number(raw_param, item) if raw_param else iterations
            if k != int(k) or k < 1:
                raise ScheduleError(f"step {item!r}: iteration count must be a whole number >= 1")
            steps.append(Step(code, int(k)))
        else:
            theta = _number(raw_param, item) if raw_param else defaults[code]
            if not 0 <= theta <= 100:
                raise ScheduleError(f"step {item!r}: threshold must be within [0, 100]")
            steps.append(Step(code, float(theta)))
    return Schedule(tuple(steps))


def _number(text: str, item: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ScheduleError(f"step {item!r}: {text!r} is not a number")


@dataclass(frozen=True)
class PlacedDecision:
    """A decision matched at ``start``; ``positions`` are the ambiguous tokens it resolves."""

    decision: Decision
    start: int
    positions: Tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return self.decision.order

    @property
    def strength(self) -> float:
        return self.decision.strength


def resolve_conflicts(applicable: Sequence[PlacedDecision]) -> List[PlacedDecision]:
    """Pick non-overlapping decisions: higher order first, then strength, then leftmost.

    Two decisions conflict when they would resolve the same ambiguous token.
    """
    ranked = sorted(applicable, key=lambda p: (-p.order, -p.strength, p.start))
    claimed: Set[int] = set()
    chosen: List[PlacedDecision] = []
    for placed in ranked:
        if claimed.intersection(placed.positions):
            continue
        claimed.update(placed.positions)
        chosen.append(placed)
    return chosen


def gather_decisions(tokens: Sequence[AnalyzedToken], model: Model,
                     orders: Sequence[int], threshold: float) -> List[PlacedDecision]:
    """Every decision whose key equals the current candidates of a window holding an ambiguous token."""
    found: List[PlacedDecision] = []
    for order in orders:
        table = model.table(order)
        for start in range(len(tokens) - order + 1):
            window = tokens[start:start + order]
            positions = tuple(start + i for i, t in enumerate(window) if not t.resolved)
            if not positions:
                continue
            decision = decide(table, [t.candidates for t in window], threshold)
            if decision is not None:
                found.append(PlacedDecision(decision, start, positions))
    return found


def apply_statistics(tokens: List[AnalyzedToken], model: Model,
                     orders: Sequence[int], threshold: float) -> int:
    """Apply decisions until none applies; returns the number applied."""
    applied = 0
    while True:
        chosen = resolve_conflicts(gather_decisions(tokens, model, orders, threshold))
        if not chosen:
            return applied
        for placed in chosen:
            for offset, tag in enumerate(placed.decision.choice):
                tokens[placed.start + offset].choose(tag)
        applied += len(chosen)


def reduce_output(sentences: Sequence[List[AnalyzedToken]], tagset_map: TagsetMap) -> Sequence[List[AnalyzedToken]]:
    """Map every candidate to the small tagset; collapsing candidates may resolve a token."""
    if tagset_map.is_identity:
        return sentences
    for sentence in sentences:
        for token in sentence:
            token.reduce(tagset_map)
    return sentences


def classify(token: AnalyzedToken) -> str:
    return RESOLVED if token.resolved else AMBIGUOUS


class Tagger:
    """Runs a schedule over sentences with shared, read-only resources."""

    def __init__(self, schedule: Schedule, morphology: Morphology,
                 rules: Optional[Sequence[NegativeRule]] = None,
                 model: Optional[Model] = None,
                 tagset_map: Optional[TagsetMap] = None,
                 rule_log: Optional[RuleLog] = None):
        """Initialize the tagger.

        Args:
            schedule: Steps to run
            morphology: Analyzer for the M step
            rules: Negative constraints, needed by D steps
            model: Decision tables, needed by T3, B, U and A steps
            tagset_map: Reduction map, needed by the R step
            rule_log: Optional log of constraint firings

        Raises:
            MissingResource: If a step's resource was not provided
        """
        for step in schedule:
            if step.code == "D" and rules is None:
                raise MissingResource(f"step {step} needs a rule file (--rules)")
            if step.is_statistical and model is None:
                raise MissingResource(f"step {step} needs a model (--model)")
            if step.code == "R" and tagset_map is None:
                raise MissingResource(f"step {step} needs a tagset map (--tagset-map)")
        self.schedule = schedule
        self.morphology = morphology
        self.rules = list(rules or ())
        self.model = model
        self.tagset_map = tagset_map
        self.rule_log = rule_log

    def run_sentence(self, sentence: Sentence, index: int = 0) -> List[AnalyzedToken]:
        tokens: List[AnalyzedToken] = []
        for step in self.schedule:
            if step.code == "M":
                tokens = self.morphology.analyze_sentence(sentence)
            elif step.code == "D":
                propagate(tokens, self.rules, int(step.param), self.rule_log, index)
                logger.debug(f"Sentence {index}: {count_anchors(tokens)} anchors after {step}")
            elif step.code == "R":
                reduce_output([tokens], self.tagset_map)
            else:
                applied = apply_statistics(tokens, self.model, STEP_ORDERS[step.code], step.param)
                logger.debug(f"Sentence {index}: {applied} decisions applied by {step}")
        return tokens

    def run(self, sentences: Sequence[Sentence], progress: bool = False) -> List[List[AnalyzedToken]]:
        tagged = [self.run_sentence(s, i) for i, s in
                  enumerate(tqdm(sentences, desc="Tagging", disable=not progress))]
        _log_summary(tagged, self.schedule)
        return tagged

    async def tag_all_async(self, sentences: Sequence[Sentence], jobs: int = 1) -> List[List[AnalyzedToken]]:
        """Tag sentences concurrently; the result keeps input order.

        Args:
            sentences: Sentences to tag
            jobs: Maximum number of sentences in flight

        Returns:
            Tagged sentences, in input order
        """
        semaphore = asyncio.Semaphore(max(1, jobs))
        loop = asyncio.get_running_loop()

        async def tag_one(index: int, sentence: Sentence) -> List[AnalyzedToken]:
            async with semaphore:
                return await loop.run_in_executor(None, self.run_sentence, sentence, index)

        tagged = await asyncio.gather(*(tag_one(i, s) for i, s in enumerate(sentences)))
        _log_summary(tagged, self.schedule)
        return list(tagged)


def _log_summary(tagged: Sequence[Sequence[AnalyzedToken]], schedule: Schedule) -> None:
    words = [t for sentence in tagged for t in sentence if not t.is_marker]
    ambiguous = sum(1 for t in words if not t.resolved)
    logger.info(f"Tagged {len(tagged)} sentences with {schedule}: {len(words)} tokens, {ambiguous} still ambiguous")


def run(sentences: Sequence[Sentence], schedule: Schedule, lexicon: Lexicon,
        rules: Optional[Sequence[NegativeRule]] = None,
        model: Optional[Model] = None,
        tagset_map: Optional[TagsetMap] = None,
        proper_nouns: Optional[ProperNounDict] = None) -> List[List[AnalyzedToken]]:
    """Tag ``sentences`` with ``schedule`` using a fresh per-run proper-noun dictionary."""
    morphology = Morphology(lexicon, learned_proper_nouns=proper_nouns)
    return Tagger(schedule, morphology, rules, model, tagset_map).run(sentences)
