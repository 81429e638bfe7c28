"""
Tags, genotypes and tagset reduction.
"""

from genotag.core.tags import (
    IDENTITY_MAP,
    Genotype,
    Tag,
    TagPattern,
    TagsetMap,
    load_tagset_map,
    make_genotype,
    make_tagset_map,
    parse_genotype_key,
    parse_pattern,
    parse_tag,
    reduce_genotype,
    reduce_tag,
    tag_matches_pattern,
)

__all__ = [
    "IDENTITY_MAP",
    "Genotype",
    "Tag",
    "TagPattern",
    "TagsetMap",
    "load_tagset_map",
    "make_genotype",
    "make_tagset_map",
    "parse_genotype_key",
    "parse_pattern",
    "parse_tag",
    "reduce_genotype",
    "reduce_tag",
    "tag_matches_pattern",
]
