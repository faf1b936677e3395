from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import _oracle
from frobius.abelian import AbelianGroup
from frobius.diagram import d_compose, d_dagger, d_tensor
from frobius.field import Cyclotomic, PrimeField, conjugate, zeta
from frobius.linalg import mat_tensor
from frobius.model import evaluate, internal_integer_matrix, ring_ops
from frobius.rewrite import normalize_spiders
from frobius.terms import parse_term, print_term

F12 = Cyclotomic(12)
Z12 = zeta(12, F12)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclo12 = st.lists(fractions, min_size=1, max_size=12).map(
    lambda cs: sum((F12(c) * Z12 ** k for k, c in enumerate(cs)), F12(0))
)
seeds = st.integers(min_value=0, max_value=10**9)


@given(cyclo12, cyclo12, cyclo12)
def test_cyclotomic_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == F12(0)


@given(cyclo12)
def test_cyclotomic_inverse_and_conjugate(a):
    if not a.is_zero():
        assert a * a.inverse() == F12(1)
    assert conjugate(conjugate(a)) == a
    assert abs(complex(conjugate(a)) - complex(a).conjugate()) < 1e-9


@given(st.integers(1, 6), st.integers(-50, 50), st.integers(-50, 50))
def test_prime_field_matches_integers_mod_p(i, x, y):
    p = [2, 3, 5, 7, 11, 13][i - 1]
    F = PrimeField(p)
    assert (F(x) * F(y)).value == (x * y) % p
    assert (F(x) + F(y)).value == (x + y) % p


@given(st.sampled_from(["Z4", "Z2xZ3", "Z2xZ2"]), st.data())
def test_group_inverse_and_scaling(text, data):
    G = AbelianGroup.parse(text)
    els = G.elements()
    a = data.draw(st.sampled_from(els))
    n = data.draw(st.integers(-10, 10))
    assert a + (-a) == G.zero()
    assert a * n + a == a * (n + 1)
    assert a * G.exponent() == G.zero()


def _circuit(seed: int, D: int, w_in: int | None = None):
    rng = random.Random(seed)
    w = rng.randint(0, 2) if w_in is None else w_in
    circ, w_out = _oracle.random_circuit(rng, w, rng.randint(1, 3), D)
    return circ, w, w_out


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["integral", "maschke", "unitary"]))
def test_print_parse_round_trip(seed, norm):
    mod = _oracle.model("Z3", norm)
    circ, _, _ = _circuit(seed, 3)
    d = parse_term(_oracle.circuit_text(circ), mod.signature)
    again = parse_term(print_term(d), mod.signature)
    assert evaluate(again, mod) == evaluate(d, mod)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_evaluation_is_functorial(s1, s2):
    mod = _oracle.model("Z2", "unitary")
    c1, _, w1 = _circuit(s1, 2)
    c2, _, _ = _circuit(s2, 2, w_in=w1)
    a = parse_term(_oracle.circuit_text(c1), mod.signature)
    b = parse_term(_oracle.circuit_text(c2), mod.signature)
    assert evaluate(d_compose(a, b), mod) == evaluate(b, mod) @ evaluate(a, mod)
    assert evaluate(d_tensor(a, b), mod) == mat_tensor(evaluate(a, mod), evaluate(b, mod))


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["maschke", "unitary"]))
def test_normalization_is_exact_when_red_is_special(seed, norm):
    mod = _oracle.model("Z3", norm)
    circ, _, _ = _circuit(seed, 3)
    d = parse_term(_oracle.circuit_text(circ), mod.signature)
    assert evaluate(normalize_spiders(d), mod) == evaluate(d, mod)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_dagger_commutes_with_evaluation(seed):
    mod = _oracle.model("Z4", "unitary")
    circ, _, _ = _circuit(seed, 4)
    d = parse_term(_oracle.circuit_text(circ), mod.signature)
    assert evaluate(d_dagger(d), mod) == evaluate(d, mod).dagger()


@settings(max_examples=30, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.sampled_from(["Z2", "Z3", "Z4"]))
def test_internal_integers_form_a_ring(a, b, group):
    mod = _oracle.model(group, "integral")
    ops = ring_ops(mod, a, b)
    assert ops.sum_matrix == internal_integer_matrix(mod, a + b)
    assert ops.product_matrix == internal_integer_matrix(mod, a * b)
    assert internal_integer_matrix(mod, a) == internal_integer_matrix(mod, a + mod.group.exponent())


@given(fractions, fractions)
def test_circle_phase_fusion(p, q):
    d = parse_term(f"comp(g(1,1,{p}), g(1,1,{q}))")
    s = (p + q) % 1
    expected = parse_term("id" if s == 0 else f"g(1,1,{s})")
    assert normalize_spiders(d) == expected
    assert isinstance(s, Fraction)
