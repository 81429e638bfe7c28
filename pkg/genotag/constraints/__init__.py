"""
Negative n-gram constraints applied around anchored tokens.
"""

from genotag.constraints.negative_rules import (
    DEFAULT_ITERATIONS,
    NegativeRule,
    RuleFiring,
    RuleLog,
    apply_rule_window,
    count_anchors,
    parse_rule,
    parse_rule_file,
    propagate,
)

__all__ = [
    "DEFAULT_ITERATIONS",
    "NegativeRule",
    "RuleFiring",
    "RuleLog",
    "apply_rule_window",
    "count_anchors",
    "parse_rule",
    "parse_rule_file",
    "propagate",
]
