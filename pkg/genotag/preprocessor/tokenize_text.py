"""
Turn raw French text into sentence-delimited lexical tokens.

The stages follow the order the tagger needs them in: sentence segmentation
(with an abbreviation list), clitic splitting (``dit-elle``), 7-bit
transliteration (``côtés`` -> ``co^te's``) and compound joining
(``bien que`` -> ``bien_que``). Accent restitution for capitalized words is
provided here and applied by the morphology stage, which knows which
lookup succeeds.
"""

import logging
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

logger = logging.getLogger(__name__)

BEGIN_MARKER = "<S>"
END_MARKER = "</S>"
MARKERS = frozenset({BEGIN_MARKER, END_MARKER})

DEFAULT_ABBREVIATIONS = (
    "M.", "MM.", "Mme.", "Mmes.", "Mlle.", "Mlles.", "Dr.", "Pr.", "Me.", "St.", "Ste.",
    "etc.", "cf.", "p.", "pp.", "av.", "bd.", "env.", "ex.", "vol.", "chap.", "art.",
)

DEFAULT_CLITICS = (
    "je", "tu", "il", "elle", "on", "nous", "vous", "ils", "elles", "ce", "t",
    "moi", "toi", "le", "la", "lui", "y", "en",
)

# ECV accent restitution; two-letter clusters are tried before one-letter ones
ECV_CONSONANTS = (
    "b", "bl", "br", "c", "ch", "cl", "cr", "d", "dl", "dr", "f", "fl", "fr", "g", "gl", "gr",
    "h", "j", "l", "m", "n", "p", "ph", "pl", "pr", "q", "r", "s", "sl", "sr", "t", "tl", "tr",
    "v", "vl", "vr", "z",
)
_ECV_CLUSTERS = tuple(sorted(ECV_CONSONANTS, key=len, reverse=True))
ECV_VOWELS = frozenset("aeiouy")

# accented letter -> base letter + diacritic marker
TRANSLITERATION: Dict[str, str] = {}
for _base, _marker, _letters in (
    ("a", "`", "àÀ"), ("e", "`", "èÈ"), ("u", "`", "ùÙ"),
    ("e", "'", "éÉ"),
    ("a", "^", "âÂ"), ("e", "^", "êÊ"), ("i", "^", "îÎ"), ("o", "^", "ôÔ"), ("u", "^", "ûÛ"),
    ("e", '"', "ëË"), ("i", '"', "ïÏ"), ("u", '"', "üÜ"), ("y", '"', "ÿŸ"),
    ("c", ",", "çÇ"),
):
    _lower, _upper = _letters
    TRANSLITERATION[_lower] = _base + _marker
    TRANSLITERATION[_upper] = _base.upper() + _marker
DETRANSLITERATION: Dict[str, str] = {v: k for k, v in TRANSLITERATION.items()}
MARKER_CHARS = frozenset(m[1] for m in DETRANSLITERATION)

TERMINAL_PUNCTUATION = frozenset({".", "!", "?", "..."})
CLOSING_PUNCTUATION = frozenset({'"', "»", ")", "]", "'"})

_ELISION = r"(?:lorsqu|puisqu|quoiqu|jusqu|presqu|qu|l|d|n|m|t|s|j|c|ç)['’]"
_LETTER = r"[^\W\d_]"
_TOKEN_RE = re.compile(
    rf"(?P<ELISION>\b{_ELISION}(?={_LETTER}))"
    rf"|(?P<NUM>\d+(?:[.,]\d+)*)"
    rf"|(?P<WORD>{_LETTER}+(?:[-'’]{_LETTER}+)*)"
    r"|(?P<ELLIPSIS>\.\.\.)"
    r"|(?P<PUNCT>[^\w\s])"
    r"|(?P<OTHER>\S)",
    re.IGNORECASE,
)
_PARAGRAPH_RE = re.compile(r"\n[ \t\r\f\v]*\n")


@dataclass(frozen=True)
class RawToken:
    """A lexical token before morphological analysis."""

    surface: str
    position: int
    sentence_initial: bool = False
    capitalized: bool = False

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must not be empty")
        if self.position < 0:
            raise ValueError("token position must be >= 0")

    @property
    def is_marker(self) -> bool:
        return self.surface in MARKERS


@dataclass(frozen=True)
class Sentence:
    """Tokens bracketed by one ``<S>`` marker and one ``</S>`` marker."""

    tokens: Tuple[RawToken, ...]

    def __post_init__(self):
        if len(self.tokens) < 2 or self.tokens[0].surface != BEGIN_MARKER or self.tokens[-1].surface != END_MARKER:
            raise ValueError("a sentence must start with <S> and end with </S>")
        if any(t.is_marker for t in self.tokens[1:-1]):
            raise ValueError("sentence markers may only appear at the sentence edges")

    @property
    def words(self) -> Tuple[RawToken, ...]:
        return self.tokens[1:-1]

    def surfaces(self) -> List[str]:
        return [t.surface for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)


def make_sentence(surfaces: Sequence[str]) -> Sentence:
    """Build a sentence from word surfaces, adding the markers and flags."""
    words = [RawToken(s, 0) for s in surfaces if s not in MARKERS]
    return Sentence(_bracket(words))


def _bracket(words: Sequence[RawToken]) -> Tuple[RawToken, ...]:
    """Re-index ``words``, set the sentence-initial flag and add the markers.

    The flag goes to the first word with a letter or digit, so opening quotes,
    brackets and dialogue dashes are skipped.
    """
    first = next((i for i, w in enumerate(words) if any(c.isalnum() for c in w.surface)), None)
    tokens = [RawToken(BEGIN_MARKER, 0)]
    for i, word in enumerate(words):
        tokens.append(RawToken(
            surface=word.surface,
            position=i + 1,
            sentence_initial=(i == first),
            capitalized=word.surface[:1].isupper(),
        ))
    tokens.append(RawToken(END_MARKER, len(words) + 1))
    return tuple(tokens)


def segment_sentences(text: str, abbreviations: Optional[Iterable[str]] = None) -> List[Sentence]:
    """Split ``text`` into sentences of tokens.

    Terminal punctuation (. ! ? ...) and paragraph breaks close a sentence;
    closing quotes, brackets and further terminal marks (``?!``) stay with it.
    Known abbreviations keep their period and do not close the sentence.

    Args:
        text: Raw UTF-8 text
        abbreviations: Abbreviations including their final period (defaults to DEFAULT_ABBREVIATIONS)

    Returns:
        Sentences in text order; empty for blank input
    """
    abbrevs = set(DEFAULT_ABBREVIATIONS if abbreviations is None else abbreviations)
    sentences: List[Sentence] = []
    for paragraph in _PARAGRAPH_RE.split(text.replace("’", "'")):
        current: List[str] = []
        closed = False
        matches = list(_TOKEN_RE.finditer(paragraph))
        i = 0
        while i < len(matches):
            match = matches[i]
            surface = match.group()
            kind = match.lastgroup
            if kind == "WORD" and i + 1 < len(matches):
                nxt = matches[i + 1]
                if nxt.group() == "." and nxt.start() == match.end() and surface + "." in abbrevs:
                    surface += "."
                    kind = "ABBREV"
                    i += 1
            if closed and surface not in CLOSING_PUNCTUATION and surface not in TERMINAL_PUNCTUATION:
                sentences.append(Sentence(_bracket([RawToken(s, 0) for s in current])))
                current = []
                closed = False
            current.append(surface)
            if surface in TERMINAL_PUNCTUATION:
                closed = True
            i += 1
        if current:
            sentences.append(Sentence(_bracket([RawToken(s, 0) for s in current])))
    return sentences


def split_clitics(token: RawToken, clitics: Optional[Iterable[str]] = None) -> List[RawToken]:
    """Split dash-attached personal pronouns off a word (``dit-elle`` -> ``dit`` ``elle``).

    Splitting proceeds from the right, so ``a-t-il`` gives ``a`` ``t`` ``il``;
    it stops at the first right part that is not a pronoun.
    """
    pronouns = set(DEFAULT_CLITICS if clitics is None else clitics)
    parts: List[str] = []
    head = token.surface
    while "-" in head:
        left, right = head.rsplit("-", 1)
        if not left or right.lower() not in pronouns:
            break
        parts.insert(0, right)
        head = left
    if not parts:
        return [token]
    surfaces = [head] + parts
    return [
        replace(token, surface=s, position=token.position + k,
                sentence_initial=token.sentence_initial and k == 0,
                capitalized=s[:1].isupper())
        for k, s in enumerate(surfaces)
    ]


def join_compounds(tokens: Sequence[RawToken], compounds: Union[Set[str], frozenset]) -> List[RawToken]:
    """Join runs of tokens that form a known compound, longest match first.

    Args:
        tokens: Tokens of one sentence (markers are never joined)
        compounds: Compound surfaces with '_' between their parts

    Returns:
        Tokens with compounds merged into one token whose parts are joined by '_'
    """
    if not compounds:
        return list(tokens)
    longest = max(c.count("_") + 1 for c in compounds)
    result: List[RawToken] = []
    i = 0
    while i < len(tokens):
        joined = None
        for size in range(min(longest, len(tokens) - i), 1, -1):
            window = tokens[i:i + size]
            if any(t.is_marker for t in window):
                continue
            candidate = "_".join(t.surface for t in window)
            if candidate in compounds or (window[0].capitalized and _lower_first(candidate) in compounds):
                joined = replace(window[0], surface=candidate)
                i += size
                break
        if joined is None:
            joined = tokens[i]
            i += 1
        result.append(joined)
    return result


def restore_accents(word: str) -> str:
    """Recover the accent a capitalized initial vowel lost (``Ecole`` -> ``École``).

    ``A`` and ``Etre`` are handled first; otherwise an initial ``E`` followed by
    a listed consonant (or cluster) and a vowel becomes ``É``.
    """
    if word == "A":
        return "À"
    if word == "Etre":
        return "Être"
    if not word.startswith("E"):
        return word
    rest = word[1:]
    for cluster in _ECV_CLUSTERS:
        if rest.startswith(cluster) and len(rest) > len(cluster) and rest[len(cluster)] in ECV_VOWELS:
            return "É" + rest
    return word


def transliterate(word: str) -> str:
    """Replace each accented letter by its base letter and a diacritic marker."""
    return "".join(TRANSLITERATION.get(ch, ch) for ch in word)


def detransliterate(word: str) -> str:
    """Exact inverse of :func:`transliterate`."""
    out: List[str] = []
    i = 0
    while i < len(word):
        pair = word[i:i + 2]
        if pair in DETRANSLITERATION:
            out.append(DETRANSLITERATION[pair])
            i += 2
        else:
            out.append(word[i])
            i += 1
    return "".join(out)


def check_transliteration(word: str) -> List[str]:
    """List marker problems in a transliterated surface.

    Apostrophes are always legal (after ``e`` they are the acute accent,
    after a consonant the French apostrophe); the other markers must follow a
    letter that can carry them.
    """
    problems = []
    for i in range(1, len(word)):
        ch = word[i]
        prev = word[i - 1]
        if ch in MARKER_CHARS and ch != "'" and prev.isalpha() and prev + ch not in DETRANSLITERATION:
            problems.append(f"marker {ch!r} after {prev!r} at {i} is not a French accent")
    return problems


def clashes_with_markers(word: str) -> bool:
    """True if raw ``word`` already contains a letter+marker pair, so its 7-bit form is ambiguous."""
    return detransliterate(transliterate(word)) != word


def normalize_case(word: str) -> str:
    """Lowercase all-caps words except their first letter (``SNCF`` -> ``Sncf``)."""
    if len(word) > 1 and is_all_caps(word):
        return word[0] + word[1:].lower()
    return word


def is_all_caps(word: str) -> bool:
    letters = [c for c in word if c.isalpha()]
    return len(letters) > 1 and all(c.isupper() for c in letters)


def _lower_first(word: str) -> str:
    return word[:1].lower() + word[1:]


def load_word_list(path: Union[str, Path]) -> List[str]:
    """Read a one-entry-per-line list (``#`` starts a comment line)."""
    with open(path, encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip() and not line.lstrip().startswith("#")]


class Preprocessor:
    """Runs the whole tokenization chain on raw text."""

    def __init__(self, compounds: Optional[Iterable[str]] = None,
                 abbreviations: Optional[Iterable[str]] = None,
                 clitics: Optional[Iterable[str]] = None):
        """Initialize the preprocessor.

        Args:
            compounds: Transliterated compound surfaces (usually ``Lexicon.compound_keys``)
            abbreviations: Abbreviation list override
            clitics: Personal-pronoun list override
        """
        self.compounds = frozenset(compounds or ())
        self.abbreviations = tuple(DEFAULT_ABBREVIATIONS if abbreviations is None else abbreviations)
        self.clitics = tuple(DEFAULT_CLITICS if clitics is None else clitics)

    def process_sentence(self, sentence: Sentence) -> Sentence:
        words: List[RawToken] = []
        for token in sentence.words:
            for piece in split_clitics(token, self.clitics):
                if clashes_with_markers(piece.surface):
                    logger.warning(f"Token {piece.surface!r} contains a diacritic marker; its 7-bit form is ambiguous")
                words.append(replace(piece, surface=transliterate(piece.surface)))
        words = join_compounds(words, self.compounds)
        return Sentence(_bracket(words))

    def tokenize(self, text: str) -> List[Sentence]:
        """Segment ``text`` and run every token stage.

        Returns:
            Sentences whose surfaces are in the 7-bit transliterated form
        """
        sentences = [self.process_sentence(s) for s in segment_sentences(text, self.abbreviations)]
        logger.debug(f"Tokenized {len(sentences)} sentences")
        return sentences
