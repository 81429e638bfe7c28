"""
genotag: part-of-speech disambiguation for French over genotypes.

This package tokenizes French text, assigns every word its genotype (the
set of tags morphology allows), and narrows genotypes down with negative
constraints and n-gram decision tables trained on genotype sequences.
"""

__version__ = "0.1.0"
