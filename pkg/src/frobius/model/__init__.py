from .build import GroupAlgebraModel, ModelError, Normalization, build_model, parse_model
from .evaluate import evaluate
from .ring import coprimality_check, classical_action, ha_to_matrix, internal_integer_matrix, ring_ops
from .setlike import enough_setlike, predicates, set_like
from .soundness import check_rule_soundness, compare, predicted_scalar
from .witness import no_distributive_law_witness

__all__ = [
    "GroupAlgebraModel",
    "ModelError",
    "Normalization",
    "build_model",
    "check_rule_soundness",
    "classical_action",
    "compare",
    "coprimality_check",
    "enough_setlike",
    "evaluate",
    "ha_to_matrix",
    "internal_integer_matrix",
    "no_distributive_law_witness",
    "parse_model",
    "predicates",
    "predicted_scalar",
    "ring_ops",
    "set_like",
]
