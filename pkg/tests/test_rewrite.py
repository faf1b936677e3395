from __future__ import annotations

import random

import pytest

import _oracle
from frobius.abelian import AbelianGroup
from frobius.diagram import TheorySignature, d_tensor, identity, internal_integer_diagram
from frobius.linalg import scalar_multiple_of
from frobius.model import evaluate
from frobius.rewrite import (
    BONE,
    MatchError,
    apply_rule,
    builtin_ruleset,
    find_matches,
    normalize_spiders,
    simplify,
    strip_scalars,
)
from frobius.rewrite.normalize import factorization
from frobius.terms import parse_term

NORMS = ("integral", "maschke", "unitary")


def _sig(group: str) -> TheorySignature:
    return TheorySignature.standard(AbelianGroup.parse(group))


def _same_in_all_norms(a, b, group: str) -> bool:
    return all(evaluate(a, _oracle.model(group, n)) == evaluate(b, _oracle.model(group, n)) for n in NORMS)


def _sound(a, b, group: str) -> bool:
    """Exact where red is special; in the integral model red loops may leave a power of D."""
    if not all(evaluate(a, _oracle.model(group, n)) == evaluate(b, _oracle.model(group, n)) for n in NORMS[1:]):
        return False
    mod = _oracle.model(group, "integral")
    c = scalar_multiple_of(evaluate(a, mod), evaluate(b, mod))
    if c is None:
        return False
    k = 1
    while k < 10**6 and c != k:
        k *= mod.dim
    return c == k


# -- spider normalization ----------------------------------------------------------------------


def test_phase_chain_fuses():
    d = parse_term("comp(g(1,1,1/3), g(1,1,1/2))")
    assert normalize_spiders(d) == parse_term("g(1,1,5/6)")


def test_cup_into_cap_is_a_closed_spider():
    d = normalize_spiders(parse_term("comp(g(0,2,0), g(2,0,0))"))
    assert d.arity == (0, 0)
    assert [(n.kind, n.m, n.n) for n in d.nodes.values()] == [("G", 0, 0)]


def test_snake_is_identity():
    d = parse_term("comp(tens(id, g(0,2,0)), tens(g(2,0,0), id))")
    assert normalize_spiders(d) == identity(1)


def test_opposite_phases_cancel_to_wire():
    assert normalize_spiders(parse_term("comp(r(1,1,1/4), r(1,1,3/4))")) == identity(1)


def test_normalization_preserves_semantics_on_random_circuits():
    rng = random.Random(11)
    sig = _sig("Z3")
    for _ in range(40):
        circ, _ = _oracle.random_circuit(rng, rng.randint(0, 2), rng.randint(1, 4), 3)
        d = parse_term(_oracle.circuit_text(circ), sig)
        assert _sound(d, normalize_spiders(d), "Z3")


def test_single_colour_factorization_counts_spiders():
    d = normalize_spiders(parse_term("comp(g(2,1,1/3), g(1,3,0))"))
    assert factorization(d) == (2, 1, 3)
    with pytest.raises(ValueError):
        factorization(parse_term("comp(g(1,1,0), r(1,1,1/2))"))


# -- matching and rule application -------------------------------------------------------------


def test_hopf_matches():
    sig = _sig("Z2")
    rule = builtin_ruleset("IF", sig).get("hopf")
    assert find_matches(identity(1, sig), rule) == []
    assert len(find_matches(rule.lhs, rule)) == 1
    assert len(find_matches(d_tensor(rule.lhs, rule.lhs), rule)) == 2


def test_bialgebra_application_is_sound():
    sig = _sig("Z3")
    rule = builtin_ruleset("IF", sig).get("bialg")
    host = parse_term("comp(tens(g(1,1,1), id), r(2,1,0), g(1,2,0), tens(id, s))", sig)
    (m,) = find_matches(host, rule)
    out = apply_rule(host, rule, m)
    assert _same_in_all_norms(host, out, "Z3")
    assert len(out.closed_components()) == 1  # the bone of the right side


def test_copy_rule_gives_two_red_units():
    sig = _sig("Z2")
    rule = builtin_ruleset("IF", sig).get("copy")
    host = parse_term("comp(r(0,1,0), g(1,2,0))", sig)
    (m,) = find_matches(host, rule)
    out = apply_rule(host, rule, m)
    assert strip_scalars(out) == parse_term("tens(r(0,1,0), r(0,1,0))", sig)
    assert _same_in_all_norms(host, out, "Z2")


def test_apply_rejects_foreign_match():
    sig = _sig("Z2")
    rs = builtin_ruleset("IF", sig)
    host = parse_term("comp(r(0,1,0), g(1,2,0))", sig)
    (m,) = find_matches(host, rs.get("copy"))
    with pytest.raises(MatchError):
        apply_rule(identity(1, sig), rs.get("copy"), m)


# -- simplification ----------------------------------------------------------------------------


def test_collapse_reduces_int4_mod_3():
    sig = _sig("Z3")
    d = internal_integer_diagram(4, sig)
    res = simplify(d, builtin_ruleset("COLLAPSE(3)", sig), 100)
    assert not res.exhausted
    assert strip_scalars(res.diagram) == identity(1, sig)
    assert _same_in_all_norms(d, res.diagram, "Z3")


def test_hopf_left_side_simplifies_to_right_side():
    sig = _sig("Z2")
    rs = builtin_ruleset("IF", sig)
    rule = rs.get("hopf")
    res = simplify(rule.lhs, rs, 50)
    assert res.diagram == rule.rhs


def test_hopf_without_bones_keeps_them_as_divisors():
    sig = _sig("Z3")
    d = parse_term("comp(g(1,2,0), tens(s, id), r(2,1,0))", sig)
    res = simplify(d, builtin_ruleset("IF", sig), 50)
    assert strip_scalars(res.diagram) == parse_term("comp(g(1,0,0), r(0,1,0))", sig)
    assert len(res.diagram.divisors) == 2
    assert _same_in_all_norms(d, res.diagram, "Z3")


def test_zero_budget_leaves_diagram_unchanged():
    sig = _sig("Z2")
    d = parse_term("comp(g(1,1,1), g(1,1,1))", sig)
    res = simplify(d, builtin_ruleset("IF", sig), 0)
    assert res.diagram == d and res.trace == [] and res.exhausted
    with pytest.raises(ValueError):
        simplify(d, builtin_ruleset("IF", sig), -1)


@pytest.mark.parametrize("group", ["Z2", "Z3"])
def test_every_trace_step_preserves_semantics(group):
    rng = random.Random(hash(group) & 0xFFFF)
    sig = _sig(group)
    D = AbelianGroup.parse(group).order()
    rs = builtin_ruleset(f"COLLAPSE({D})", sig)
    for _ in range(12):
        circ, _ = _oracle.random_circuit(rng, rng.randint(1, 2), rng.randint(2, 4), D)
        d = parse_term(_oracle.circuit_text(circ), sig)
        res = simplify(d, rs, 25)
        for step in res.trace:
            assert _sound(d, step.diagram, group), step.line()


def test_trace_lines():
    sig = _sig("Z3")
    res = simplify(internal_integer_diagram(4, sig), builtin_ruleset("COLLAPSE(3)", sig), 100)
    lines = res.trace_text().splitlines()
    assert lines and all(ln.startswith("step ") for ln in lines)
    assert BONE.startswith("comp(")
