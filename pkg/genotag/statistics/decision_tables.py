"""
Unigram, bigram and trigram decision tables over genotype sequences.

Counts are taken on genotypes, never on word forms: a word unseen in training
is disambiguated through the genotype it belongs to. Every decision carries a
strength, the relative frequency estimate lowered by one standard deviation,
so that a decision observed 25 times out of 25 is weaker than one observed
30 times out of 30.
"""

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from genotag.core.tags import (
    IDENTITY_MAP,
    Genotype,
    Tag,
    TagsetMap,
    make_genotype,
    parse_genotype_key,
    parse_tag,
    reduce_genotype,
)
from genotag.corpus_io import GoldToken
from genotag.errors import EmptyGenotype, InvalidCounts, MalformedTag, ModelFormatError
from genotag.morphology.analyze_tokens import BEGIN_TAG, END_TAG, Lexicon, Morphology, ProperNounDict
from genotag.preprocessor.tokenize_text import make_sentence

logger = logging.getLogger(__name__)

MODEL_VERSION = "v1"
MODEL_HEADER = f"genotag-model {MODEL_VERSION}"
SECTIONS = {1: "[UNIGRAM]", 2: "[BIGRAM]", 3: "[TRIGRAM]"}
DEFAULT_THRESHOLDS = {1: 90.0, 2: 75.0, 3: 50.0}

# stored strengths must agree with the recomputed value within this bound
STRENGTH_TOLERANCE = 1e-9

Key = Tuple[Genotype, ...]
Choice = Tuple[Tag, ...]


def strength_formula(f: int, n: int) -> float:
    """Lower one-standard-deviation bound of the smoothed frequency, times 100.

    Args:
        f: Times the decision was observed
        n: Times its key was observed

    Returns:
        Strength in [0, 100)

    Raises:
        InvalidCounts: If ``n < 1``, ``f < 0`` or ``f > n``
    """
    if n < 1 or f < 0 or f > n:
        raise InvalidCounts(f"invalid counts f={f}, n={n}")
    p = (f + 0.5) / (n + 1)
    return (p - math.sqrt(p * (1 - p) / n)) * 100


@dataclass(frozen=True)
class Decision:
    """Resolve the genotypes ``key`` to the tags ``choice``, seen ``f`` times in ``n``."""

    key: Key
    choice: Choice
    f: int
    n: int
    strength: float = field(init=False, compare=False)

    def __post_init__(self):
        if len(self.key) != len(self.choice) or not 1 <= len(self.key) <= 3:
            raise ValueError("decision key and choice must have the same length 1..3")
        for genotype, tag in zip(self.key, self.choice):
            if tag not in genotype:
                raise ValueError(f"choice {tag} is not in genotype {genotype}")
        object.__setattr__(self, "strength", strength_formula(self.f, self.n))

    @property
    def order(self) -> int:
        return len(self.key)

    @property
    def percent(self) -> float:
        """Raw relative frequency ``f/n`` as a percentage, for display."""
        return 100.0 * self.f / self.n

    def __str__(self) -> str:
        key = " ".join(str(g) for g in self.key)
        choice = " ".join(t.text for t in self.choice)
        return f"{key} -> {choice} ({self.f}/{self.n}, {self.strength:.2f})"


def key_text(key: Key) -> str:
    return "|".join(g.key() for g in key)


class DecisionTable:
    """All decisions of one order, grouped by key and sorted by descending ``f``."""

    def __init__(self, order: int, rows: Optional[Dict[Key, List[Decision]]] = None):
        if order not in SECTIONS:
            raise ValueError(f"order must be 1, 2 or 3, got {order}")
        self.order = order
        self.rows: Dict[Key, List[Decision]] = {}
        for key, decisions in (rows or {}).items():
            self.rows[key] = sorted(decisions, key=lambda d: (-d.f, d.choice))

    @classmethod
    def from_counts(cls, order: int, counts: Dict[Key, Counter]) -> "DecisionTable":
        rows = {}
        for key, choices in counts.items():
            n = sum(choices.values())
            rows[key] = [Decision(key, choice, f, n) for choice, f in choices.items()]
        return cls(order, rows)

    def decisions(self, key: Sequence[Genotype]) -> List[Decision]:
        return self.rows.get(tuple(key), [])

    def distribution(self, key: Sequence[Genotype]) -> List[Tuple[Decision, float]]:
        """Every decision of ``key`` with its ``f/n`` percentage."""
        return [(d, d.percent) for d in self.decisions(key)]

    def strongest(self, limit: int) -> List[Decision]:
        ranked = sorted((d for ds in self.rows.values() for d in ds),
                        key=lambda d: (-d.strength, key_text(d.key), d.choice))
        return ranked[:limit]

    @property
    def row_count(self) -> int:
        return sum(len(ds) for ds in self.rows.values())

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DecisionTable) and self.order == other.order and self.rows == other.rows


@dataclass
class Model:
    """The three decision tables of a trained model."""

    unigram: DecisionTable = field(default_factory=lambda: DecisionTable(1))
    bigram: DecisionTable = field(default_factory=lambda: DecisionTable(2))
    trigram: DecisionTable = field(default_factory=lambda: DecisionTable(3))
    version: str = MODEL_VERSION

    def table(self, order: int) -> DecisionTable:
        return {1: self.unigram, 2: self.bigram, 3: self.trigram}[order]

    @property
    def tables(self) -> List[DecisionTable]:
        return [self.unigram, self.bigram, self.trigram]


def decide(table: DecisionTable, key: Sequence[Genotype], threshold: float) -> Optional[Decision]:
    """Top decision for ``key`` if its strength reaches ``threshold``."""
    if len(key) != table.order:
        raise ValueError(f"key of length {len(key)} for a table of order {table.order}")
    decisions = table.decisions(key)
    if not decisions or decisions[0].strength < threshold:
        return None
    return decisions[0]


def train(corpus: Iterable[Sequence[GoldToken]], lex: Lexicon,
          tagset_map: TagsetMap = IDENTITY_MAP,
          proper_nouns: Optional[ProperNounDict] = None,
          progress: bool = False) -> Model:
    """Count genotype to gold-tag decisions over a hand-tagged corpus.

    Args:
        corpus: Sentences of gold tokens, without markers
        lex: Lexicon used to recover each token's genotype
        tagset_map: Reduction applied to genotypes and gold tags before counting
        proper_nouns: Dictionary filled with the proper nouns met in the corpus
        progress: Show a progress bar

    Returns:
        The trained model
    """
    morphology = Morphology(lex, proper_nouns=proper_nouns)
    counts: Dict[int, Dict[Key, Counter]] = {order: defaultdict(Counter) for order in SECTIONS}
    skipped = 0

    for index, sentence in enumerate(tqdm(corpus, desc="Training", disable=not progress)):
        if not sentence:
            continue
        raw = make_sentence([t.surface for t in sentence])
        observed: List[Optional[Tuple[Genotype, Tag]]] = [(make_genotype([BEGIN_TAG]), BEGIN_TAG)]
        for gold_token, raw_token in zip(sentence, raw.words):
            genotype = gold_token.genotype or morphology.genotype_of(raw_token)
            genotype = reduce_genotype(genotype, tagset_map)
            gold = tagset_map.lookup(gold_token.gold)
            if gold not in genotype:
                logger.warning(f"Sentence {index + 1}: gold tag {gold} of {gold_token.surface!r} "
                               f"is not in its genotype {genotype}; skipped")
                skipped += 1
                observed.append(None)
            else:
                observed.append((genotype, gold))
        observed.append((make_genotype([END_TAG]), END_TAG))

        for order in SECTIONS:
            for start in range(len(observed) - order + 1):
                window = observed[start:start + order]
                if any(item is None for item in window):
                    continue
                key = tuple(g for g, _ in window)
                if all(len(g) == 1 for g in key):
                    continue
                counts[order][key][tuple(t for _, t in window)] += 1

    model = Model(*(DecisionTable.from_counts(order, counts[order]) for order in SECTIONS))
    logger.info(f"Trained model: {model.unigram.row_count} unigram, {model.bigram.row_count} bigram, "
                f"{model.trigram.row_count} trigram rows ({skipped} tokens skipped)")
    return model


def save_model(model: Model, path: Union[str, Path]) -> None:
    """Write ``model``; keys are sorted so identical models give identical bytes."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(MODEL_HEADER + "\n")
        for table in model.tables:
            f.write(SECTIONS[table.order] + "\n")
            for key in sorted(table.rows, key=key_text):
                for d in table.rows[key]:
                    choice = " ".join(t.text for t in d.choice)
                    f.write(f"{key_text(key)}\t{choice}\t{d.f}\t{d.n}\t{d.strength:.12f}\n")


def load_model(path: Union[str, Path]) -> Model:
    """Read a model file back, checking counts and strengths.

    Raises:
        ModelFormatError: On a malformed or inconsistent line, with its line number
    """
    path = Path(path)
    section_orders = {name: order for order, name in SECTIONS.items()}
    rows: Dict[int, Dict[Key, List[Decision]]] = {order: {} for order in SECTIONS}
    order: Optional[int] = None
    header_seen = False
    first_lines: Dict[Tuple[int, Key], int] = {}

    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            if not header_seen:
                if line.strip() != MODEL_HEADER:
                    raise ModelFormatError(f"expected header {MODEL_HEADER!r}", path, lineno)
                header_seen = True
                continue
            if line.strip() in section_orders:
                order = section_orders[line.strip()]
                continue
            if order is None:
                raise ModelFormatError("row outside of a section", path, lineno)
            decision = _parse_row(line, order, path, lineno)
            existing = rows[order].setdefault(decision.key, [])
            first_lines.setdefault((order, decision.key), lineno)
            if existing and existing[0].n != decision.n:
                raise ModelFormatError(f"rows of key {key_text(decision.key)} disagree on n", path, lineno)
            if sum(d.f for d in existing) + decision.f > decision.n:
                raise ModelFormatError(f"counts of key {key_text(decision.key)} exceed n={decision.n}", path, lineno)
            existing.append(decision)

    if not header_seen:
        raise ModelFormatError(f"missing header {MODEL_HEADER!r}", path)
    for (o, key), lineno in first_lines.items():
        total = sum(d.f for d in rows[o][key])
        n = rows[o][key][0].n
        if total != n:
            raise ModelFormatError(f"counts of key {key_text(key)} sum to {total}, expected n={n}", path, lineno)
    model = Model(*(DecisionTable(o, rows[o]) for o in SECTIONS))
    logger.info(f"Loaded model from {path}: {len(model.unigram)} unigram, {len(model.bigram)} bigram, "
                f"{len(model.trigram)} trigram keys")
    return model


def _parse_row(line: str, order: int, path: Path, lineno: int) -> Decision:
    fields = line.split("\t")
    if len(fields) != 5:
        raise ModelFormatError("expected key<TAB>choice<TAB>f<TAB>n<TAB>strength", path, lineno)
    key_field, choice_field, f_field, n_field, strength_field = fields
    try:
        key = tuple(parse_genotype_key(k) for k in key_field.split("|"))
        choice = tuple(parse_tag(t) for t in choice_field.split())
    except (MalformedTag, EmptyGenotype) as e:
        raise ModelFormatError(e.message, path, lineno) from e
    if len(key) != order or len(choice) != order:
        raise ModelFormatError(f"expected {order} genotypes and tags", path, lineno)
    try:
        f, n, stored = int(f_field), int(n_field), float(strength_field)
    except ValueError:
        raise ModelFormatError("counts and strength must be numbers", path, lineno)
    try:
        decision = Decision(key, choice, f, n)
    except InvalidCounts as e:
        raise ModelFormatError(e.message, path, lineno) from e
    except ValueError as e:
        raise ModelFormatError(str(e), path, lineno) from e
    if abs(decision.strength - stored) > STRENGTH_TOLERANCE:
        raise ModelFormatError(f"stored strength {stored} does not match {decision.strength:.12f}", path, lineno)
    return decision
