"""Certify rules by evaluating both sides in a model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..diagram import Diagram, with_signature
from ..field import Scalar
from ..linalg import scalar_multiple_of
from .build import GroupAlgebraModel, Normalization, red_scale_exponent
from .evaluate import evaluate


@dataclass(frozen=True)
class RuleReport:
    name: str
    status: str  # "exact", "scalar" or "FAIL"
    scalar: Scalar | None = None

    def line(self) -> str:
        if self.status == "scalar":
            return f"rule {self.name} scalar {self.scalar}"
        return f"rule {self.name} {self.status}"


def compare(a: Diagram, b: Diagram, model: GroupAlgebraModel) -> RuleReport:
    ma, mb = evaluate(a, model), evaluate(b, model)
    if ma == mb:
        return RuleReport("", "exact")
    c = scalar_multiple_of(ma, mb)
    if c is None or c.is_zero():
        return RuleReport("", "FAIL")
    return RuleReport("", "scalar", c)


def check_rule_soundness(rs, model: GroupAlgebraModel) -> list[RuleReport]:
    out = []
    for rule in rs.rules:
        lhs, rhs = _adapt(rule.lhs, model), _adapt(rule.rhs, model)
        rep = compare(lhs, rhs, model)
        out.append(RuleReport(rule.name, rep.status, rep.scalar))
    return out


def _adapt(d: Diagram, model: GroupAlgebraModel) -> Diagram:
    return d


def scale_exponent(d: Diagram, norm: Normalization) -> Fraction:
    """Total exponent e with eval_norm(d) = D**e * eval_integral(d)."""
    e = Fraction(0)
    for nd in d.nodes.values():
        if nd.kind == "R":
            e += red_scale_exponent(norm, nd.m, nd.n)
    for div in d.divisors:
        e -= scale_exponent(div, norm)
    return e


def predicted_scalar(rule, model: GroupAlgebraModel) -> Scalar:
    """The documented discrepancy lhs/rhs of a rule that is exact in the unitary model.

    Every red spider of a normalisation is a power of D times its integral
    form, so the discrepancy in any normalisation follows from the unitary one
    by counting red spiders on each side.
    """
    U = Normalization.UNITARY
    e = (scale_exponent(rule.lhs, model.norm) - scale_exponent(rule.rhs, model.norm)) - (
        scale_exponent(rule.lhs, U) - scale_exponent(rule.rhs, U)
    )
    return Scalar(model.field, model.scale_power(e))


__all__ = ["RuleReport", "check_rule_soundness", "compare", "predicted_scalar", "scale_exponent", "with_signature"]
