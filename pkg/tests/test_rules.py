from __future__ import annotations

import pytest

import _oracle
from frobius.abelian import AbelianGroup
from frobius.diagram import TheorySignature, internal_integer_diagram
from frobius.field import sqrt_dim
from frobius.model import check_rule_soundness, predicted_scalar
from frobius.rewrite import RuleError, builtin_ruleset, dump_ruleset, parse_ruleset


def _sig(group: str) -> TheorySignature:
    return TheorySignature.standard(AbelianGroup.parse(group))


def test_frobius_theory_over_trivial_groups():
    rs = builtin_ruleset("F", TheorySignature.trivial())
    names = rs.names()
    assert "g-frob-left" in names and "g-special" in names
    assert not any(n.startswith("r-") for n in names)


def test_interacting_theory_contents():
    names = builtin_ruleset("IF", _sig("Z2")).names()
    for n in ["bialg", "copy", "hopf", "plus-unit", "antipode-def", "r-special", "g-P1[1]"]:
        assert n in names


def test_collapse_contains_integer_reduction():
    sig = _sig("Z3")
    rs = builtin_ruleset("COLLAPSE(3)", sig)
    rule = rs.get("collapse[4]")
    assert rule.rhs == internal_integer_diagram(1, sig)
    with pytest.raises(RuleError):
        builtin_ruleset("COLLAPSE(2)", sig)


def test_unknown_ruleset():
    with pytest.raises(RuleError):
        builtin_ruleset("XYZ")


def test_ruleset_round_trip():
    rs = builtin_ruleset("IFK", _sig("Z2"))
    again = parse_ruleset(dump_ruleset(rs), rs.signature)
    assert again.names() == rs.names()
    for a, b in zip(rs.rules, again.rules):
        assert a.lhs == b.lhs and a.rhs == b.rhs and a.tag == b.tag


@pytest.mark.parametrize("group", ["Z2", "Z3", "Z4", "Z5", "Z2xZ2"])
def test_all_rules_exact_in_unitary_model(group):
    mod = _oracle.model(group, "unitary")
    rs = builtin_ruleset(f"COLLAPSE({mod.group.exponent()})", mod.signature)
    bad = [r.line() for r in check_rule_soundness(rs, mod) if r.status != "exact"]
    assert not bad, bad


@pytest.mark.parametrize("norm", ["integral", "maschke"])
@pytest.mark.parametrize("group", ["Z2", "Z3", "Z4"])
def test_other_normalizations_match_predicted_scalars(group, norm):
    mod = _oracle.model(group, norm)
    rs = builtin_ruleset(f"COLLAPSE({mod.group.exponent()})", mod.signature)
    for rule, rep in zip(rs.rules, check_rule_soundness(rs, mod)):
        assert rep.status != "FAIL", rule.name
        expected = predicted_scalar(rule, mod)
        if rep.status == "exact":
            assert expected == 1, rule.name
        else:
            assert rep.scalar == expected, rule.name


def test_bone_is_not_trivial_in_unitary_z2():
    mod = _oracle.model("Z2", "unitary")
    (rep,) = check_rule_soundness(builtin_ruleset("Bprime", mod.signature), mod)
    assert rep.status == "scalar"
    assert rep.scalar == sqrt_dim(2, mod.field)
    assert rep.scalar * rep.scalar == 2


def test_red_specialness_in_integral_z3():
    mod = _oracle.model("Z3", "integral")
    rs = builtin_ruleset("IF", mod.signature)
    reports = {r.name: r for r in check_rule_soundness(rs, mod)}
    assert reports["r-special"].status == "scalar" and reports["r-special"].scalar == 3
    assert reports["g-special"].status == "exact"


def test_circle_phase_rules_in_cyclotomic_model():
    mod = _oracle.model("Z3", "unitary", _oracle.cyclo(12))
    from frobius.model import build_model

    m2 = build_model(mod.group, mod.field, mod.norm, TheorySignature())
    rs = builtin_ruleset("FG_plus_FH", m2.signature)
    assert all(r.status == "exact" for r in check_rule_soundness(rs, m2))
