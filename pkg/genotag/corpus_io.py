"""
Line-oriented corpus formats.

* token stream: one token per line, ``<S>``/``</S>`` emitted explicitly, blank
  line between sentences (extra tab-separated columns are ignored on input);
* tagged output: ``surface<TAB>tag`` for resolved tokens,
  ``surface<TAB>tag1 tag2 ...`` for ambiguous ones, blank line between sentences;
* training corpus: ``surface<TAB>GOLD`` with an optional third column giving
  the genotype explicitly, blank line between sentences.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

from genotag.core.tags import Genotype, Tag, make_genotype, parse_tag
from genotag.errors import CorpusFormatError, EmptyGenotype, MalformedTag, TrainingDataError
from genotag.morphology.analyze_tokens import AnalyzedToken
from genotag.preprocessor.tokenize_text import BEGIN_MARKER, END_MARKER, MARKERS, Sentence, make_sentence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoldToken:
    """One hand-tagged token of a training corpus."""

    surface: str
    gold: Tag
    genotype: Optional[Genotype] = None


@dataclass(frozen=True)
class TaggedToken:
    """One line of tagged output read back for evaluation."""

    surface: str
    candidates: Genotype
    line: int = 0

    @property
    def is_marker(self) -> bool:
        return self.surface in MARKERS


def _blocks(path: Path) -> List[List[Tuple[int, str]]]:
    """Group the non-blank lines of ``path`` into blank-line separated blocks."""
    blocks: List[List[Tuple[int, str]]] = []
    current: List[Tuple[int, str]] = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                if current:
                    blocks.append(current)
                    current = []
                continue
            current.append((lineno, line))
    if current:
        blocks.append(current)
    return blocks


def write_token_stream(sentences: Sequence[Sentence], out: TextIO) -> None:
    for i, sentence in enumerate(sentences):
        if i:
            out.write("\n")
        for surface in sentence.surfaces():
            out.write(surface + "\n")


def read_token_stream(path: Union[str, Path]) -> List[Sentence]:
    """Read a token stream (or the first column of a tagged file) back into sentences.

    A ``</S>`` line also closes a sentence, so streams without blank lines
    still split correctly.

    Raises:
        CorpusFormatError: On a line whose first column is empty, with its line number
    """
    path = Path(path)
    sentences: List[Sentence] = []
    for block in _blocks(path):
        surfaces: List[str] = []
        for lineno, line in block:
            surface = line.split("\t", 1)[0]
            if not surface.strip():
                raise CorpusFormatError("empty token surface", path, lineno)
            if surface == END_MARKER:
                if surfaces:
                    sentences.append(make_sentence(surfaces))
                surfaces = []
            elif surface != BEGIN_MARKER:
                surfaces.append(surface)
        if surfaces:
            sentences.append(make_sentence(surfaces))
    return sentences


def format_tags(genotype: Genotype) -> str:
    return " ".join(t.text for t in genotype)


def write_tagged(sentences: Sequence[Sequence[AnalyzedToken]], out: TextIO) -> None:
    for i, sentence in enumerate(sentences):
        if i:
            out.write("\n")
        for token in sentence:
            out.write(f"{token.surface}\t{format_tags(token.candidates)}\n")


def read_tagged(path: Union[str, Path]) -> List[List[TaggedToken]]:
    """Read tagged output or a gold corpus (second column only).

    Raises:
        CorpusFormatError: On a line without tags, with its line number
    """
    path = Path(path)
    sentences: List[List[TaggedToken]] = []
    for block in _blocks(path):
        sentence: List[TaggedToken] = []
        for lineno, line in block:
            fields = line.split("\t")
            if len(fields) < 2 or not fields[0] or not fields[1].strip():
                raise CorpusFormatError("expected surface<TAB>tag(s)", path, lineno)
            try:
                candidates = make_genotype(fields[1].split())
            except (MalformedTag, EmptyGenotype) as e:
                raise CorpusFormatError(e.message, path, lineno) from e
            sentence.append(TaggedToken(fields[0], candidates, lineno))
        sentences.append(sentence)
    return sentences


def read_training_corpus(path: Union[str, Path]) -> List[List[GoldToken]]:
    """Read a hand-tagged corpus; marker lines are skipped.

    Raises:
        TrainingDataError: On an unparseable line, with its line number
    """
    path = Path(path)
    sentences: List[List[GoldToken]] = []
    for block in _blocks(path):
        sentence: List[GoldToken] = []
        for lineno, line in block:
            fields = line.split("\t")
            if fields[0] in MARKERS:
                continue
            if len(fields) not in (2, 3) or not fields[0]:
                raise TrainingDataError("expected surface<TAB>GOLD[<TAB>TAG1 TAG2 ...]", path, lineno)
            try:
                gold = parse_tag(fields[1].strip())
                genotype = make_genotype(fields[2].split()) if len(fields) == 3 else None
            except (MalformedTag, EmptyGenotype) as e:
                raise TrainingDataError(e.message, path, lineno) from e
            sentence.append(GoldToken(fields[0], gold, genotype))
        if sentence:
            sentences.append(sentence)
    logger.info(f"Read {len(sentences)} training sentences from {path}")
    return sentences


def write_training_corpus(sentences: Sequence[Sequence[GoldToken]], out: TextIO) -> None:
    for i, sentence in enumerate(sentences):
        if i:
            out.write("\n")
        for token in sentence:
            line = f"{token.surface}\t{token.gold.text}"
            if token.genotype is not None:
                line += "\t" + format_tags(token.genotype)
            out.write(line + "\n")
