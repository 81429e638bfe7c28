"""
Tags, tag patterns, genotypes and tagset reduction.

A tag is a compact feature string (``V3SPI``: verb, 3rd person, singular,
present, indicative). A genotype is the canonical set of tags a word form can
bear after morphological analysis; every statistic in genotag is estimated
over genotypes rather than over word forms.
"""

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from genotag.errors import EmptyGenotype, MalformedTag, TagsetMapError

logger = logging.getLogger(__name__)

WILDCARD = "*"

# '+' joins tags and '|' joins genotypes in the model file
RESERVED_CHARS = frozenset("+|")

_WHITESPACE = re.compile(r"\s")


def _check_text(text: str, kind: str) -> None:
    if not isinstance(text, str) or not text:
        raise MalformedTag(f"empty {kind}")
    if _WHITESPACE.search(text):
        raise MalformedTag(f"{kind} {text!r} contains whitespace")
    reserved = RESERVED_CHARS.intersection(text)
    if reserved:
        raise MalformedTag(f"{kind} {text!r} contains reserved character {sorted(reserved)[0]!r}")


@dataclass(frozen=True, order=True)
class Tag:
    """A single part-of-speech tag; position 0 is the syntactic category."""

    text: str

    def __post_init__(self):
        _check_text(self.text, "tag")
        if WILDCARD in self.text:
            raise MalformedTag(f"tag {self.text!r} contains '*', which is reserved for patterns")

    @property
    def category(self) -> str:
        return self.text[0]

    def __str__(self) -> str:
        return self.text

    def __len__(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class TagPattern:
    """A tag in which each ``*`` stands for exactly one arbitrary character."""

    text: str

    def __post_init__(self):
        _check_text(self.text, "pattern")

    @property
    def is_all_wildcards(self) -> bool:
        return set(self.text) == {WILDCARD}

    def matches(self, tag: Tag) -> bool:
        return tag_matches_pattern(tag, self)

    def shadows(self, other: "TagPattern") -> bool:
        """True if every tag matched by ``other`` is also matched by this pattern."""
        if len(self.text) != len(other.text):
            return False
        return all(a == WILDCARD or a == b for a, b in zip(self.text, other.text))

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Genotype:
    """Sorted, duplicate-free, non-empty tuple of tags.

    Build instances with :func:`make_genotype`; the constructor only checks
    that the tuple is already canonical.
    """

    tags: Tuple[Tag, ...]

    def __post_init__(self):
        if not self.tags:
            raise EmptyGenotype("a genotype needs at least one tag")
        for left, right in zip(self.tags, self.tags[1:]):
            if not left < right:
                raise ValueError(f"genotype tags are not canonical: {self.key()}")

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self) -> Iterator[Tag]:
        return iter(self.tags)

    def __contains__(self, tag: object) -> bool:
        return tag in self.tags

    def __lt__(self, other: "Genotype") -> bool:
        return self.key() < other.key()

    @property
    def is_ambiguous(self) -> bool:
        return len(self.tags) > 1

    def key(self) -> str:
        return "+".join(t.text for t in self.tags)

    def union(self, other: Iterable[Tag]) -> "Genotype":
        return make_genotype(list(self.tags) + list(other))

    def __str__(self) -> str:
        return "[" + " ".join(t.text for t in self.tags) + "]"


@dataclass(frozen=True)
class TagsetMap:
    """Ordered many-to-one tag mapping; the first matching pattern wins."""

    entries: Tuple[Tuple[TagPattern, Tag], ...] = ()

    def lookup(self, tag: Tag) -> Tag:
        for pattern, target in self.entries:
            if tag_matches_pattern(tag, pattern):
                return target
        return tag

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_identity(self) -> bool:
        return not self.entries


IDENTITY_MAP = TagsetMap()


def parse_tag(s: str) -> Tag:
    """Parse a tag string.

    Raises:
        MalformedTag: If ``s`` is empty, contains whitespace, '*' or a reserved character
    """
    return Tag(s)


def parse_pattern(s: str) -> TagPattern:
    return TagPattern(s)


def make_genotype(tags: Sequence[Union[Tag, str]]) -> Genotype:
    """Build the canonical genotype of ``tags``; input order and duplicates are irrelevant.

    Raises:
        EmptyGenotype: If ``tags`` is empty
    """
    parsed = {t if isinstance(t, Tag) else parse_tag(t) for t in tags}
    if not parsed:
        raise EmptyGenotype("a genotype needs at least one tag")
    return Genotype(tuple(sorted(parsed)))


def parse_genotype_key(key: str) -> Genotype:
    """Inverse of :meth:`Genotype.key` (``BD3S+RDM``)."""
    return make_genotype(key.split("+"))


def tag_matches_pattern(t: Tag, p: TagPattern) -> bool:
    if len(t.text) != len(p.text):
        return False
    return all(pc == WILDCARD or pc == tc for tc, pc in zip(t.text, p.text))


def reduce_tag(t: Tag, m: TagsetMap) -> Tag:
    return m.lookup(t)


def reduce_genotype(g: Genotype, m: TagsetMap) -> Genotype:
    if m.is_identity:
        return g
    return make_genotype([m.lookup(t) for t in g])


def make_tagset_map(entries: Iterable[Tuple[str, str]]) -> TagsetMap:
    """Build a map from ``(pattern, target)`` string pairs, kept in order."""
    return TagsetMap(tuple((parse_pattern(p), parse_tag(t)) for p, t in entries))


def load_tagset_map(path: Union[str, Path]) -> TagsetMap:
    """Load a tagset map file (``PATTERN<TAB>target``, ``#`` comments).

    Args:
        path: Path to the map file

    Returns:
        The map, entries in file order

    Raises:
        TagsetMapError: On a malformed line
    """
    path = Path(path)
    entries: List[Tuple[TagPattern, Tag]] = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise TagsetMapError("expected PATTERN<TAB>target", path, lineno)
            try:
                pattern = parse_pattern(fields[0].strip())
                target = parse_tag(fields[1].strip())
            except MalformedTag as e:
                raise TagsetMapError(e.message, path, lineno) from e
            shadow = _find_shadow(entries, pattern)
            if shadow is not None:
                logger.warning(f"{path}:{lineno}: pattern {pattern} is unreachable, "
                               f"every tag it matches is caught earlier by {shadow}")
            entries.append((pattern, target))
    logger.info(f"Loaded {len(entries)} tagset map entries from {path}")
    return TagsetMap(tuple(entries))


def _find_shadow(entries: Sequence[Tuple[TagPattern, Tag]], pattern: TagPattern) -> Optional[TagPattern]:
    for earlier, _ in entries:
        if earlier.shadows(pattern):
            return earlier
    return None
