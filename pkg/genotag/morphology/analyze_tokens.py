"""
Assign a genotype to every token.

Lookup is an exact-match dictionary over the transliterated surface forms
listed in the lexicon file (every inflected form is enumerated, so no
transducer is needed). Capitalized words are handled with the proper-noun
heuristics: mid-sentence capitals get the proper-noun tag ``U``,
sentence-initial capitals are looked up again with restored accents and in
lowercase, and words no dictionary knows are learned as proper nouns.
"""

import logging
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from genotag.core.tags import (
    IDENTITY_MAP,
    Genotype,
    Tag,
    TagsetMap,
    make_genotype,
    parse_tag,
    reduce_genotype,
)
from genotag.errors import EmptyGenotype, LexiconParseError, MalformedTag
from genotag.preprocessor.tokenize_text import (
    BEGIN_MARKER,
    END_MARKER,
    RawToken,
    Sentence,
    check_transliteration,
    detransliterate,
    normalize_case,
    restore_accents,
    transliterate,
)

logger = logging.getLogger(__name__)

PROPER_NOUN = Tag("U")
BEGIN_TAG = Tag("^")
END_TAG = Tag("$")
NUMERAL = Tag("W")
PUNCTUATION = Tag(".")

DEFAULT_GUESS = ("NFS", "NMS", "JFS", "JMS", "V")

_NUMBER_RE = re.compile(r"^\d+(?:[.,]\d+)*$")


class Lexicon:
    """Immutable mapping from transliterated surface form to genotype."""

    def __init__(self, entries: Mapping[str, Genotype]):
        self._entries: Dict[str, Genotype] = dict(entries)
        self.compound_keys = frozenset(k for k in self._entries if "_" in k)

    @classmethod
    def from_tags(cls, entries: Mapping[str, Iterable[str]]) -> "Lexicon":
        return cls({surface: make_genotype(list(tags)) for surface, tags in entries.items()})

    def lookup(self, surface: str) -> Optional[Genotype]:
        return self._entries.get(surface)

    def __contains__(self, surface: object) -> bool:
        return surface in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def items(self) -> Iterable[Tuple[str, Genotype]]:
        return self._entries.items()


def load_lexicon(path: Union[str, Path]) -> Lexicon:
    """Load a lexicon file (``surface<TAB>TAG1 TAG2 ...``, ``#`` comments).

    Duplicate surfaces merge their tag sets.

    Args:
        path: Path to the lexicon file

    Returns:
        The loaded lexicon

    Raises:
        LexiconParseError: On a malformed line, with its line number
    """
    path = Path(path)
    merged: Dict[str, Set[Tag]] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0]:
                raise LexiconParseError("expected surface<TAB>TAG1 TAG2 ...", path, lineno)
            surface, tag_field = fields
            tag_texts = tag_field.split()
            if not tag_texts:
                raise LexiconParseError(f"no tags for {surface!r}", path, lineno)
            try:
                tags = {parse_tag(t) for t in tag_texts}
            except MalformedTag as e:
                raise LexiconParseError(e.message, path, lineno) from e
            for problem in check_transliteration(surface):
                logger.warning(f"{path}:{lineno}: {surface!r}: {problem}")
            merged.setdefault(surface, set()).update(tags)
    lexicon = Lexicon({surface: make_genotype(list(tags)) for surface, tags in merged.items()})
    logger.info(f"Loaded lexicon with {len(lexicon)} entries ({len(lexicon.compound_keys)} compounds) from {path}")
    return lexicon


class ProperNounDict:
    """Growable set of surfaces known to be proper nouns.

    Insertions are serialized with a lock so several analysis workers can
    share one dictionary; membership queries never mutate.
    """

    def __init__(self, names: Iterable[str] = ()):
        self._names: Set[str] = set(names)
        self._lock = threading.Lock()

    def add(self, word: str) -> bool:
        """Insert ``word``; returns True if it was not known before."""
        with self._lock:
            if word in self._names:
                return False
            self._names.add(word)
            return True

    def __contains__(self, word: object) -> bool:
        return word in self._names

    def __len__(self) -> int:
        return len(self._names)

    def names(self) -> List[str]:
        return sorted(self._names)


def learn_proper_noun(word: str, pn: ProperNounDict) -> None:
    if pn.add(word):
        logger.debug(f"Learned proper noun {word!r}")


def load_proper_nouns(path: Union[str, Path]) -> ProperNounDict:
    with open(path, encoding="utf-8") as f:
        return ProperNounDict(line.strip() for line in f if line.strip() and not line.startswith("#"))


def save_proper_nouns(pn: ProperNounDict, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for name in pn.names():
            f.write(name + "\n")


@dataclass
class AnalyzedToken:
    """A token with its genotype and the candidates still left for it."""

    surface: str
    genotype: Genotype
    candidates: Genotype = None
    gold: Optional[Tag] = None

    def __post_init__(self):
        if self.candidates is None:
            self.candidates = self.genotype
        elif not set(self.candidates).issubset(self.genotype):
            raise ValueError(f"candidates {self.candidates} of {self.surface!r} are not within {self.genotype}")

    @property
    def resolved(self) -> bool:
        return len(self.candidates) == 1

    @property
    def tag(self) -> Optional[Tag]:
        """The resolved tag, or None while ambiguous."""
        return self.candidates.tags[0] if self.resolved else None

    @property
    def is_marker(self) -> bool:
        return self.surface in (BEGIN_MARKER, END_MARKER)

    def remove(self, tags: Iterable[Tag]) -> List[Tag]:
        """Drop ``tags`` from the candidates unless that would leave none.

        Returns:
            The tags actually removed (empty when the removal was refused)
        """
        doomed = set(tags).intersection(self.candidates)
        if not doomed:
            return []
        remaining = [t for t in self.candidates if t not in doomed]
        if not remaining:
            return []
        self.candidates = make_genotype(remaining)
        return sorted(doomed)

    def choose(self, tag: Tag) -> bool:
        """Resolve to ``tag`` if it is still a candidate."""
        if tag not in self.candidates:
            return False
        changed = len(self.candidates) > 1
        self.candidates = make_genotype([tag])
        return changed

    def reduce(self, m: TagsetMap) -> None:
        self.genotype = reduce_genotype(self.genotype, m)
        self.candidates = reduce_genotype(self.candidates, m)
        if self.gold is not None:
            self.gold = m.lookup(self.gold)


def load_suffix_rules(path: Union[str, Path]) -> List[Tuple[str, Genotype]]:
    """Load ``suffix<TAB>TAG ...`` guessing rules, longest suffix first."""
    path = Path(path)
    rules = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0]:
                raise LexiconParseError("expected suffix<TAB>TAG ...", path, lineno)
            try:
                rules.append((fields[0], make_genotype(fields[1].split())))
            except (MalformedTag, EmptyGenotype) as e:
                raise LexiconParseError(e.message, path, lineno) from e
    rules.sort(key=lambda rule: len(rule[0]), reverse=True)
    return rules


class Morphology:
    """Genotype assignment with lexicon lookup and proper-noun heuristics."""

    def __init__(self, lexicon: Lexicon,
                 proper_nouns: Optional[ProperNounDict] = None,
                 learned_proper_nouns: Optional[ProperNounDict] = None,
                 guess: Sequence[str] = DEFAULT_GUESS,
                 guess_map: TagsetMap = IDENTITY_MAP,
                 suffix_rules: Optional[Sequence[Tuple[str, Genotype]]] = None):
        """Initialize the analyzer.

        Args:
            lexicon: The main dictionary
            proper_nouns: Per-run dictionary, filled while analyzing
            learned_proper_nouns: Dictionary persisted from the training corpus (read only here)
            guess: Open-class genotype for unknown lowercase words
            guess_map: Tagset map applied to the guess genotype
            suffix_rules: Optional suffix guessing rules, longest suffix first
        """
        self.lexicon = lexicon
        self.proper_nouns = proper_nouns if proper_nouns is not None else ProperNounDict()
        self.learned_proper_nouns = learned_proper_nouns if learned_proper_nouns is not None else ProperNounDict()
        self.guess = reduce_genotype(make_genotype(list(guess)), guess_map)
        self.suffix_rules = list(suffix_rules or ())

    def is_proper_noun(self, word: str) -> bool:
        return word in self.proper_nouns or word in self.learned_proper_nouns

    def analyze(self, token: RawToken) -> AnalyzedToken:
        """Give ``token`` a non-empty genotype; never fails."""
        return AnalyzedToken(token.surface, self.genotype_of(token))

    def genotype_of(self, token: RawToken) -> Genotype:
        surface = token.surface
        if surface == BEGIN_MARKER:
            return make_genotype([BEGIN_TAG])
        if surface == END_MARKER:
            return make_genotype([END_TAG])
        known = self.lexicon.lookup(surface)
        if not any(c.isalpha() for c in surface):
            if known is not None:
                return known
            return make_genotype([NUMERAL if _NUMBER_RE.match(surface) else PUNCTUATION])
        if not token.capitalized:
            return known if known is not None else self._guess(surface)
        if token.sentence_initial:
            return self._sentence_initial(surface)
        return self._mid_sentence_capital(surface)

    def _mid_sentence_capital(self, surface: str) -> Genotype:
        word = normalize_case(surface)
        known = self.lexicon.lookup(surface) or self.lexicon.lookup(word)
        if known is not None:
            return known.union([PROPER_NOUN])
        learn_proper_noun(surface, self.proper_nouns)
        return make_genotype([PROPER_NOUN])

    def _sentence_initial(self, surface: str) -> Genotype:
        word = normalize_case(surface)
        found: List[Tag] = []
        for exact in {surface, word}:
            hit = self.lexicon.lookup(exact)
            if hit is not None:
                found.extend(hit)
        if self.is_proper_noun(surface):
            found.append(PROPER_NOUN)
        restored = transliterate(_lower_first(restore_accents(detransliterate(word))))
        lowered = _lower_first(word)
        for candidate in (restored, lowered):
            hit = self.lexicon.lookup(candidate)
            if hit is not None:
                found.extend(hit)
                break
        if found:
            return make_genotype(found)
        learn_proper_noun(surface, self.proper_nouns)
        return make_genotype([PROPER_NOUN])

    def _guess(self, surface: str) -> Genotype:
        for suffix, genotype in self.suffix_rules:
            if surface.endswith(suffix) and len(surface) > len(suffix):
                return genotype
        return self.guess

    def analyze_sentence(self, sentence: Sentence) -> List[AnalyzedToken]:
        return [self.analyze(token) for token in sentence.tokens]

    def collect_proper_nouns(self, sentences: Iterable[Sentence]) -> int:
        """First pass of the two-pass mode: learn every proper noun before analysis.

        Returns:
            Number of proper nouns in the per-run dictionary afterwards
        """
        for sentence in sentences:
            for token in sentence.words:
                if token.capitalized:
                    self.genotype_of(token)
        return len(self.proper_nouns)


def analyze(token: RawToken, lex: Lexicon, pn: ProperNounDict) -> AnalyzedToken:
    """Analyze one token against ``lex``, learning proper nouns into ``pn``."""
    return Morphology(lex, proper_nouns=pn).analyze(token)


def _lower_first(word: str) -> str:
    return word[:1].lower() + word[1:]
