"""
Negative constraints: tag sequences that are not legal in a French sentence.

A rule such as ``N** K`` says a noun can never be followed by a relative
pronoun. Rules only fire next to anchors (tokens already reduced to one tag):
when every position of a window but one is anchored and matches its pattern,
the candidates of the free position that match its pattern are removed.
Anchors created this way license further firings on the next windows.
"""

import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from genotag.core.tags import TagPattern, parse_pattern
from genotag.errors import MalformedTag, RuleParseError
from genotag.morphology.analyze_tokens import AnalyzedToken

logger = logging.getLogger(__name__)

DEFAULT_ITERATIONS = 3


@dataclass(frozen=True)
class NegativeRule:
    """An illegal sequence of two or three tag patterns."""

    patterns: Tuple[TagPattern, ...]
    id: str = ""

    def __post_init__(self):
        if len(self.patterns) not in (2, 3):
            raise ValueError(f"rule {self.id or self}: a rule needs 2 or 3 patterns, got {len(self.patterns)}")
        for p in self.patterns:
            if p.is_all_wildcards:
                raise ValueError(f"rule {self.id or self}: pattern {p} matches every tag")

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return " ".join(p.text for p in self.patterns)


@dataclass(frozen=True)
class RuleFiring:
    rule_id: str
    sentence_index: int
    token_index: int
    tag: str
    blocked: bool = False


class RuleLog:
    """Collects rule firings for the ``--rule-log`` debugging output."""

    def __init__(self):
        self.firings: List[RuleFiring] = []
        self._lock = threading.Lock()

    def record(self, firing: RuleFiring) -> None:
        with self._lock:
            self.firings.append(firing)

    @property
    def blocked(self) -> List[RuleFiring]:
        return [f for f in self.firings if f.blocked]

    def __len__(self) -> int:
        return len(self.firings)

    def write_tsv(self, path: Union[str, Path]) -> None:
        """Write one line per firing, ordered by sentence; blocked firings say so in the last column."""
        ordered = sorted(self.firings, key=lambda f: f.sentence_index)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("rule\tsentence\ttoken\ttag\tstatus\n")
            for firing in ordered:
                status = "blocked" if firing.blocked else "removed"
                f.write(f"{firing.rule_id}\t{firing.sentence_index}\t{firing.token_index}\t{firing.tag}\t{status}\n")


def parse_rule(text: str, rule_id: str = "") -> NegativeRule:
    """Parse one space-separated rule line.

    Raises:
        RuleParseError: On a bad pattern, a rule of the wrong length or an all-wildcard pattern
    """
    try:
        patterns = tuple(parse_pattern(p) for p in text.split())
        return NegativeRule(patterns, rule_id)
    except MalformedTag as e:
        raise RuleParseError(e.message) from e
    except ValueError as e:
        raise RuleParseError(str(e)) from e


def parse_rule_file(path: Union[str, Path]) -> List[NegativeRule]:
    """Load a rule file: one rule per line, patterns separated by spaces, ``#`` comments.

    Args:
        path: Path to the rule file

    Returns:
        Rules in file order, each with id ``<file name>:<line>``

    Raises:
        RuleParseError: On a malformed line, with its line number
    """
    path = Path(path)
    rules: List[NegativeRule] = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rules.append(parse_rule(line, f"{path.name}:{lineno}"))
            except RuleParseError as e:
                raise RuleParseError(e.message, path, lineno) from e
    logger.info(f"Loaded {len(rules)} negative constraints from {path}")
    return rules


def apply_rule_window(window: Sequence[AnalyzedToken], rule: NegativeRule,
                      log: Optional[RuleLog] = None, sentence_index: int = 0,
                      offset: int = 0) -> bool:
    """Fire ``rule`` on ``window`` if exactly one position is still ambiguous.

    Args:
        window: Consecutive tokens, as many as the rule has patterns
        rule: The rule to try
        log: Optional firing log
        sentence_index: Sentence number, for the log
        offset: Position of ``window[0]`` in its sentence, for the log

    Returns:
        True if a candidate was removed
    """
    if len(window) != len(rule.patterns):
        raise ValueError(f"window of {len(window)} tokens for rule {rule} of length {len(rule)}")
    free = [i for i, token in enumerate(window) if not token.resolved]
    if len(free) != 1:
        return False
    free_pos = free[0]
    for i, (token, pattern) in enumerate(zip(window, rule.patterns)):
        if i != free_pos and not pattern.matches(token.tag):
            return False

    token = window[free_pos]
    pattern = rule.patterns[free_pos]
    doomed = [t for t in token.candidates if pattern.matches(t)]
    if not doomed:
        return False
    if len(doomed) == len(token.candidates):
        logger.warning(f"Rule {rule.id or rule} would remove every candidate of {token.surface!r} "
                       f"{token.candidates}; left unchanged")
        if log is not None:
            for t in doomed:
                log.record(RuleFiring(rule.id, sentence_index, offset + free_pos, t.text, blocked=True))
        return False

    removed = token.remove(doomed)
    if log is not None:
        for t in removed:
            log.record(RuleFiring(rule.id, sentence_index, offset + free_pos, t.text))
    return bool(removed)


def propagate(sentence: List[AnalyzedToken], rules: Sequence[NegativeRule],
              max_iterations: int = DEFAULT_ITERATIONS,
              log: Optional[RuleLog] = None, sentence_index: int = 0) -> List[AnalyzedToken]:
    """Sweep every rule over every window until nothing changes or the iterations run out.

    Each sweep walks window starts left to right and tries the rules in file
    order; a token anchored by one firing is already an anchor for the next
    window of the same sweep. The sentence is modified in place.

    Returns:
        The same sentence
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    for iteration in range(max_iterations):
        changed = False
        for start in range(len(sentence)):
            for rule in rules:
                end = start + len(rule)
                if end > len(sentence):
                    continue
                if apply_rule_window(sentence[start:end], rule, log, sentence_index, start):
                    changed = True
        if not changed:
            break
    return sentence


def count_anchors(sentence: Sequence[AnalyzedToken]) -> int:
    return sum(1 for token in sentence if token.resolved and not token.is_marker)
