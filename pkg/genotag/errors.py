"""
Exception hierarchy shared by every genotag module.
"""

from pathlib import Path
from typing import Optional, Union


class GenotagError(ValueError):
    """Base class for all data and contract errors raised by genotag."""

    def __init__(self, message: str, path: Optional[Union[str, Path]] = None, line: Optional[int] = None):
        """Initialize the error.

        Args:
            message: Human readable description
            path: File the error was found in, if any
            line: 1-based line number inside ``path``, if any
        """
        self.message = message
        self.path = str(path) if path is not None else None
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        if self.path is not None and self.line is not None:
            return f"{self.path}:{self.line}: {self.message}"
        if self.path is not None:
            return f"{self.path}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class MalformedTag(GenotagError):
    """A tag or tag pattern string is not well formed."""


class EmptyGenotype(GenotagError):
    """A genotype was built from no tags."""


class TagsetMapError(GenotagError):
    """A tagset map file could not be parsed."""


class LexiconParseError(GenotagError):
    """A lexicon or proper-noun file could not be parsed."""


class RuleParseError(GenotagError):
    """A negative constraint file could not be parsed."""


class InvalidCounts(GenotagError):
    """Counts handed to the strength formula are inconsistent."""


class TrainingDataError(GenotagError):
    """A training corpus line could not be parsed."""


class ModelFormatError(GenotagError):
    """A model file is malformed or inconsistent."""


class ScheduleError(GenotagError):
    """A schedule string is not a legal composition of steps."""


class MissingResource(GenotagError):
    """A schedule step needs a resource that was not provided."""


class AlignmentError(GenotagError):
    """System output and gold corpus do not carry the same tokens."""


class CorpusFormatError(GenotagError):
    """A token stream or tagged corpus file is malformed."""


class ConfigError(GenotagError):
    """Configuration is incomplete or points at missing files."""
