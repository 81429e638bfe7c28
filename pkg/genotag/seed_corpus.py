"""
Synthetic corpus generator for development and property tests.

Sentences are sampled from a small tag-transition table and each tag is
realised by a word drawn from a toy lexicon in which several words are
ambiguous, so the disambiguation steps have real work to do.
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from genotag.core.tags import Tag
from genotag.corpus_io import GoldToken, write_training_corpus
from genotag.morphology.analyze_tokens import Lexicon

logger = logging.getLogger(__name__)

# D determiner, N noun, V verb, P pronoun, A adjective, X punctuation
SEED_LEXICON: Dict[str, Tuple[str, ...]] = {
    "le": ("D", "P"),
    "la": ("D",),
    "un": ("D",),
    "une": ("D",),
    "il": ("P",),
    "elle": ("P",),
    "chat": ("N",),
    "chien": ("N",),
    "livre": ("N",),
    "maison": ("N",),
    "danse": ("N", "V"),
    "marche": ("N", "V"),
    "forme": ("N", "V"),
    "porte": ("N", "V"),
    "dort": ("V",),
    "mange": ("V",),
    "court": ("A", "V"),
    "grand": ("A",),
    "petit": ("A",),
    "rouge": ("A", "N"),
    ".": ("X",),
}

SEED_TRANSITIONS: Dict[str, Dict[str, float]] = {
    "^": {"D": 0.6, "P": 0.4},
    "D": {"N": 1.0},
    "N": {"V": 0.6, "A": 0.2, "X": 0.2},
    "P": {"V": 1.0},
    "V": {"D": 0.5, "X": 0.5},
    "A": {"X": 0.5, "V": 0.5},
}

SEED_RULES = ["D V"]

MAX_SENTENCE_LENGTH = 40


def seed_lexicon() -> Lexicon:
    return Lexicon.from_tags(SEED_LEXICON)


def _words_by_tag() -> Dict[str, List[str]]:
    by_tag: Dict[str, List[str]] = {}
    for word, tags in sorted(SEED_LEXICON.items()):
        for tag in tags:
            by_tag.setdefault(tag, []).append(word)
    return by_tag


def generate_sentences(count: int, seed: int = 0) -> List[List[GoldToken]]:
    """Sample ``count`` gold-tagged sentences; the same seed gives the same corpus."""
    rng = np.random.default_rng(seed)
    by_tag = _words_by_tag()
    sentences: List[List[GoldToken]] = []
    for _ in range(count):
        tokens: List[GoldToken] = []
        state = "^"
        while state != "X":
            if len(tokens) >= MAX_SENTENCE_LENGTH - 1:
                state = "X"
            else:
                nexts = SEED_TRANSITIONS[state]
                state = str(rng.choice(list(nexts), p=list(nexts.values())))
            word = str(rng.choice(by_tag[state]))
            if not tokens:
                word = word[:1].upper() + word[1:]
            tokens.append(GoldToken(word, Tag(state)))
        sentences.append(tokens)
    return sentences


def write_seed_corpus(directory: Union[str, Path], sentences: int = 200, seed: int = 0) -> Dict[str, Path]:
    """Write the toy lexicon, rules, a training corpus and a held-out corpus.

    Args:
        directory: Output directory, created if needed
        sentences: Sentences per corpus
        seed: Seed of the training corpus; the held-out corpus uses ``seed + 1``

    Returns:
        Paths of the written files by role
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "lexicon": directory / "lexicon.txt",
        "rules": directory / "rules.txt",
        "train": directory / "train.tsv",
        "heldout": directory / "heldout.tsv",
    }
    with open(paths["lexicon"], "w", encoding="utf-8", newline="\n") as f:
        for word, tags in sorted(SEED_LEXICON.items()):
            f.write(f"{word}\t{' '.join(tags)}\n")
    with open(paths["rules"], "w", encoding="utf-8", newline="\n") as f:
        f.write("# a determiner is never followed by a verb\n")
        for rule in SEED_RULES:
            f.write(rule + "\n")
    for role, corpus_seed in (("train", seed), ("heldout", seed + 1)):
        with open(paths[role], "w", encoding="utf-8", newline="\n") as f:
            write_training_corpus(generate_sentences(sentences, corpus_seed), f)
    logger.info(f"Wrote seed corpus ({sentences} sentences per split) to {directory}")
    return paths
