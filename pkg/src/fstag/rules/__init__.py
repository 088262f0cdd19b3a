"""Constraint-based disambiguation: rule DSL and lattice reduction engine."""
from .core import (
    Action,
    Condition,
    PreferenceRanking,
    Rule,
    RulePack,
    Tier,
    TierTrace,
    apply_final_preference,
    apply_rule,
    apply_tier,
    apply_tiers,
    run_tier,
)
from .dsl import (
    DuplicateRuleError,
    RuleParseError,
    RuleSyntaxError,
    RuleTagError,
    default_rule_pack,
    parse_rules,
    parse_rules_text,
)

__all__ = [
    "Action",
    "Condition",
    "PreferenceRanking",
    "Rule",
    "RulePack",
    "Tier",
    "TierTrace",
    "apply_final_preference",
    "apply_rule",
    "apply_tier",
    "apply_tiers",
    "run_tier",
    "DuplicateRuleError",
    "RuleParseError",
    "RuleSyntaxError",
    "RuleTagError",
    "default_rule_pack",
    "parse_rules",
    "parse_rules_text",
]
