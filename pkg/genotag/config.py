"""
Run configuration.

Defaults come from the environment (a ``.env`` file is honoured), command-line
flags override them.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from genotag.constraints.negative_rules import DEFAULT_ITERATIONS
from genotag.errors import ConfigError
from genotag.pipeline.run_schedule import Schedule, parse_schedule
from genotag.statistics.decision_tables import DEFAULT_THRESHOLDS

DEFAULT_SCHEDULE = "M,D:3,B,U:90"

# config field -> environment variable
ENV_VARS = {
    "lexicon": "GENOTAG_LEXICON",
    "rules": "GENOTAG_RULES",
    "model": "GENOTAG_MODEL",
    "tagset_map": "GENOTAG_TAGSET_MAP",
    "schedule": "GENOTAG_SCHEDULE",
    "log_level": "GENOTAG_LOG_LEVEL",
}

# config field -> command-line flag, for error messages
FLAGS = {
    "lexicon": "--lexicon",
    "rules": "--rules",
    "model": "--model",
    "tagset_map": "--tagset-map",
    "abbreviations": "--abbrev",
    "clitics": "--clitics",
    "proper_nouns": "--proper-nouns",
    "suffix_rules": "--suffix-rules",
}


class Config(BaseModel):
    """Resource paths, schedule and tuning knobs for one command."""

    lexicon: Optional[Path] = None
    rules: Optional[Path] = None
    model: Optional[Path] = None
    tagset_map: Optional[Path] = None
    abbreviations: Optional[Path] = None
    clitics: Optional[Path] = None
    proper_nouns: Optional[Path] = None
    suffix_rules: Optional[Path] = None

    schedule: str = DEFAULT_SCHEDULE
    unigram_threshold: float = DEFAULT_THRESHOLDS[1]
    bigram_threshold: float = DEFAULT_THRESHOLDS[2]
    trigram_threshold: float = DEFAULT_THRESHOLDS[3]
    iterations: int = DEFAULT_ITERATIONS
    jobs: int = 1
    two_pass: bool = False
    progress: bool = False
    log_level: str = "INFO"

    @field_validator("unigram_threshold", "bigram_threshold", "trigram_threshold")
    @classmethod
    def check_threshold(cls, v: float) -> float:
        if not 0 <= v <= 100:
            raise ValueError("thresholds must lie within [0, 100]")
        return v

    @field_validator("iterations", "jobs")
    @classmethod
    def check_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {v!r}")
        return v

    @classmethod
    def from_env(cls, **overrides: Any) -> "Config":
        """Build a config from the environment, then apply every override that is not None.

        Raises:
            ConfigError: If a value fails validation
        """
        load_dotenv(find_dotenv(usecwd=True))
        values: Dict[str, Any] = {}
        for name, var in ENV_VARS.items():
            value = os.getenv(var)
            if value:
                values[name] = value
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**values)
        except ValidationError as e:
            problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
            raise ConfigError(f"invalid configuration: {problems}") from e

    def step_thresholds(self) -> Dict[str, float]:
        return {
            "T3": self.trigram_threshold,
            "B": self.bigram_threshold,
            "U": self.unigram_threshold,
            "A": self.unigram_threshold,
        }

    def parsed_schedule(self, text: Optional[str] = None) -> Schedule:
        """Parse ``text`` (the configured schedule by default) with the configured defaults."""
        return parse_schedule(self.schedule if text is None else text, self.step_thresholds(), self.iterations)

    def require(self, *names: str) -> None:
        """Fail fast unless every named path is set and exists.

        Raises:
            ConfigError: Naming the first missing flag or file
        """
        for name in names:
            path = getattr(self, name)
            if path is None:
                raise ConfigError(f"{FLAGS.get(name, name)} is required")
            if not Path(path).exists():
                raise ConfigError(f"{FLAGS.get(name, name)} file not found", path)
