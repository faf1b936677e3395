from .match import Match, MatchError, apply_rule, find_matches, strip_scalars
from .normalize import normalize_spiders
from .rules import BONE, RGBONE, Rule, RuleError, RuleSet, builtin_ruleset, dump_ruleset, parse_ruleset
from .simplify import SimplifyResult, simplify
from .yang_baxter import check_yang_baxter

__all__ = [
    "BONE",
    "RGBONE",
    "Match",
    "MatchError",
    "Rule",
    "RuleError",
    "RuleSet",
    "SimplifyResult",
    "apply_rule",
    "builtin_ruleset",
    "check_yang_baxter",
    "dump_ruleset",
    "find_matches",
    "normalize_spiders",
    "parse_ruleset",
    "simplify",
    "strip_scalars",
]
