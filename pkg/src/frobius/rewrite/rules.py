"""Rule sets for the tower of theories M, C, F, FG, FG+FH, IF, IFK and COLLAPSE(d).

Both sides of every rule are explicit diagrams.  Closed scalar diagrams are
kept on whichever side makes the rule hold exactly in the unitary group
algebra models; ``bone`` is red unit then green counit and ``rgbone`` is its
adjoint.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from ..abelian import AbelianGroup, GroupElement
from ..diagram import Diagram, TheorySignature, d_dagger, dump_graph, parse_graph
from ..terms import parse_term


class RuleError(ValueError):
    pass


BONE = "comp(r(0,1,0), g(1,0,0))"
RGBONE = "comp(g(0,1,0), r(1,0,0))"

# simplify priority: lower runs first
CATEGORY_ORDER = {"collapse": 0, "copy": 2, "antipode": 2, "bialgebra": 3, "hopf": 4}


@dataclass
class Rule:
    name: str
    lhs: Diagram
    rhs: Diagram
    tag: str = "unit"
    category: str = "structural"
    _split: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.lhs.arity != self.rhs.arity:
            raise RuleError(f"rule {self.name}: sides have arities {self.lhs.arity} and {self.rhs.arity}")
        if self.lhs.signature != self.rhs.signature:
            raise RuleError(f"rule {self.name}: sides have different signatures")

    def split_lhs(self) -> tuple[Diagram, list[Diagram]]:
        """The open part of the left side and its closed (scalar) components."""
        if self._split is None:
            d = self.lhs
            closed = d.closed_components()
            ids = set().union(*closed) if closed else set()
            self._split = (d.without(ids), [d.subdiagram(c) for c in closed])
        return self._split

    def dagger(self, name: str | None = None) -> Rule:
        return Rule(name or self.name + "-dag", d_dagger(self.lhs), d_dagger(self.rhs), _dagger_tag(self.tag), self.category)


def _dagger_tag(tag: str) -> str:
    return tag.replace("bone(gr)", "\0").replace("bone(rg)", "bone(gr)").replace("\0", "bone(rg)")


@dataclass
class RuleSet:
    name: str
    rules: list[Rule]
    signature: TheorySignature
    collapse: int | None = None

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def get(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.rules]


def _rule(sig: TheorySignature, name: str, lhs: str, rhs: str, tag: str = "unit", category: str = "structural") -> Rule:
    return Rule(name, parse_term(lhs, sig), parse_term(rhs, sig), tag, category)


def _elements(group: AbelianGroup, samples: int = 3) -> list[GroupElement]:
    """Nonzero phases used to instantiate per-element rules."""
    if group.circle:
        return [group.element(Fraction(1, k)) for k in range(2, 2 + samples)]
    return [e for e in group.elements() if not e.is_zero()]


def _monoid_rules(sig: TheorySignature, c: str) -> list[Rule]:
    mul, unit = f"{c}(2,1,0)", f"{c}(0,1,0)"
    return [
        _rule(sig, f"{c}-assoc", f"comp(tens({mul}, id), {mul})", f"comp(tens(id, {mul}), {mul})"),
        _rule(sig, f"{c}-unit-left", f"comp(tens({unit}, id), {mul})", "id"),
        _rule(sig, f"{c}-unit-right", f"comp(tens(id, {unit}), {mul})", "id"),
        _rule(sig, f"{c}-comm", f"comp(swap, {mul})", mul),
    ]


def _comonoid_rules(sig: TheorySignature, c: str) -> list[Rule]:
    out = []
    for r in _monoid_rules(sig, c):
        out.append(r.dagger(r.name.replace(f"{c}-", f"{c}-co", 1)))
    return out


def _frobenius_rules(sig: TheorySignature, c: str) -> list[Rule]:
    mul, comul = f"{c}(2,1,0)", f"{c}(1,2,0)"
    return [
        _rule(sig, f"{c}-frob-left", f"comp(tens({comul}, id), tens(id, {mul}))", f"comp({mul}, {comul})"),
        _rule(sig, f"{c}-frob-right", f"comp(tens(id, {comul}), tens({mul}, id))", f"comp({mul}, {comul})"),
        _rule(sig, f"{c}-special", f"comp({comul}, {mul})", "id"),
    ]


def _phase_rules(sig: TheorySignature, c: str) -> list[Rule]:
    grp = sig.green if c == "g" else sig.red
    out = [_rule(sig, f"{c}-phase-zero", f"{c}(1,1,0)", "id")]
    els = _elements(grp)
    for a in els:
        pa = f"{c}(1,1,{a})"
        out.append(_rule(sig, f"{c}-P1[{a}]", f"comp(tens({pa}, id), {c}(2,1,0))", f"comp({c}(2,1,0), {pa})"))
        out.append(_rule(sig, f"{c}-P2[{a}]", f"comp({pa}, {c}(1,2,0))", f"comp({c}(1,2,0), tens({pa}, id))"))
    for a in els:
        for b in els:
            if grp.circle or a.coords <= b.coords:
                s = a + b
                out.append(_rule(sig, f"{c}-phase-sum[{a},{b}]", f"comp({c}(1,1,{a}), {c}(1,1,{b}))", f"{c}(1,1,{s})"))
    return out


def _frobenius_theory(sig: TheorySignature, c: str, phases: bool) -> list[Rule]:
    rules = _monoid_rules(sig, c) + _comonoid_rules(sig, c) + _frobenius_rules(sig, c)
    if phases:
        rules += _phase_rules(sig, c)
    return rules


def _interaction_rules(sig: TheorySignature) -> list[Rule]:
    B = BONE
    bialg_rhs = "comp(tens(g(1,2,0), g(1,2,0)), tens(id, swap, id), tens(r(2,1,0), r(2,1,0)))"
    rules = [
        _rule(sig, "bialg", "comp(r(2,1,0), g(1,2,0))", f"tens({bialg_rhs}, {B})", "bone(gr)", "bialgebra"),
        _rule(sig, "copy", f"tens(comp(r(0,1,0), g(1,2,0)), {B})", "tens(r(0,1,0), r(0,1,0))", "bone(gr)", "copy"),
        _rule(sig, "cocopy", f"tens(comp(r(2,1,0), g(1,0,0)), {B})", "tens(g(1,0,0), g(1,0,0))", "bone(gr)", "copy"),
        _rule(sig, "plus-unit", "comp(g(0,2,0), tens(r(1,0,0), id))", "r(0,1,0)", "unit", "copy"),
        _rule(sig, "plus-counit", "comp(tens(g(0,1,0), id), r(2,0,0))", "g(1,0,0)", "unit", "copy"),
        _rule(
            sig,
            "hopf",
            f"tens(comp(g(1,2,0), tens(s, id), r(2,1,0)), {B}, {B})",
            "comp(g(1,0,0), r(0,1,0))",
            "bone(gr)^2",
            "hopf",
        ),
    ]
    rules += [r.dagger() for r in list(rules)]
    rules += [
        _rule(sig, "antipode-def", "s", "comp(tens(id, r(0,2,0)), tens(g(2,0,0), id))", "unit", "definition"),
        _rule(sig, "antipode-invol", "comp(s, s)", "id", "unit", "hopf"),
        _rule(sig, "s-rmul", "comp(r(2,1,0), s)", "comp(tens(s, s), r(2,1,0))", "unit", "antipode"),
        _rule(sig, "s-gmul", "comp(g(2,1,0), s)", "comp(tens(s, s), g(2,1,0))", "unit", "antipode"),
        _rule(sig, "s-runit", "comp(r(0,1,0), s)", "r(0,1,0)", "unit", "antipode"),
        _rule(sig, "s-gunit", "comp(g(0,1,0), s)", "g(0,1,0)", "unit", "antipode"),
        _rule(sig, "s-gcomul", "comp(s, g(1,2,0))", "comp(g(1,2,0), tens(s, s))", "unit", "antipode"),
        _rule(sig, "s-rcomul", "comp(s, r(1,2,0))", "comp(r(1,2,0), tens(s, s))", "unit", "antipode"),
        _rule(sig, "s-gcounit", "comp(s, g(1,0,0))", "g(1,0,0)", "unit", "antipode"),
        _rule(sig, "s-rcounit", "comp(s, r(1,0,0))", "r(1,0,0)", "unit", "antipode"),
    ]
    return rules


def _subgroup(gens, group: AbelianGroup) -> list[GroupElement]:
    return [e for e in group.subgroup(list(gens)) if not e.is_zero()]


def _classical_rules(sig: TheorySignature) -> list[Rule]:
    if sig.green_classical is None or sig.red_classical is None:
        raise RuleError("IFK needs both classical subgroups in the signature")
    B, Bd = BONE, RGBONE
    rules = []
    for h in _subgroup(sig.green_classical, sig.red):
        rules.append(_rule(sig, f"ifk-copy[{h}]", f"tens(comp(r(0,1,{h}), g(1,2,0)), {B})", f"tens(r(0,1,{h}), r(0,1,{h}))", "bone(gr)", "copy"))
        rules.append(_rule(sig, f"ifk-delete[{h}]", f"comp(r(0,1,{h}), g(1,0,0))", B, "bone(gr)", "copy"))
    for g in _subgroup(sig.red_classical, sig.green):
        rules.append(_rule(sig, f"ifk-cocopy[{g}]", f"tens(comp(g(0,1,{g}), r(1,2,0)), {Bd})", f"tens(g(0,1,{g}), g(0,1,{g}))", "bone(rg)", "copy"))
        rules.append(_rule(sig, f"ifk-codelete[{g}]", f"comp(g(0,1,{g}), r(1,0,0))", Bd, "bone(rg)", "copy"))
    rules += [r.dagger() for r in list(rules)]
    return rules


def classical_exponent(sig: TheorySignature) -> int:
    if not sig.green_classical:
        raise RuleError("the signature has no green-classical subgroup")
    orders = [e.order() for e in sig.red.subgroup(list(sig.green_classical))]
    return reduce(math.lcm, orders, 1)


def _collapse_rules(sig: TheorySignature, d: int) -> list[Rule]:
    rules = []
    for n in range(d, 2 * d):
        r = n % d
        lhs = f"tens(int({n}){''.join(', ' + BONE for _ in range(n - r))})"
        if n - r == 0:
            lhs = f"int({n})"
        rules.append(_rule(sig, f"collapse[{n}]", lhs, f"int({r})", f"bone(gr)^{n - r}", "collapse"))
    return rules


_NAME_RE = re.compile(r"^(COLLAPSE|IFK_d|IFKd)\((\d+)\)$")


def builtin_ruleset(name: str, signature: TheorySignature | None = None) -> RuleSet:
    sig = signature or TheorySignature()
    name = name.strip()
    collapse = None
    m = _NAME_RE.match(name)
    if m:
        collapse = int(m.group(2))
        if sig.green_classical is not None and collapse != classical_exponent(sig):
            raise RuleError(
                f"COLLAPSE({collapse}) does not match the green-classical exponent {classical_exponent(sig)}"
            )
        name = f"COLLAPSE({collapse})"
    if name == "M":
        rules = _monoid_rules(sig, "g")
    elif name == "C":
        rules = _comonoid_rules(sig, "g")
    elif name == "F":
        rules = _frobenius_theory(sig, "g", phases=False)
    elif name == "FG":
        rules = _frobenius_theory(sig, "g", phases=True)
    elif name in ("FG_plus_FH", "FG+FH"):
        name = "FG_plus_FH"
        rules = _frobenius_theory(sig, "g", True) + _frobenius_theory(sig, "r", True)
    elif name == "IF":
        rules = _frobenius_theory(sig, "g", True) + _frobenius_theory(sig, "r", True) + _interaction_rules(sig)
    elif name == "IFK":
        rules = builtin_ruleset("IF", sig).rules + _classical_rules(sig)
    elif collapse is not None:
        if collapse < 1:
            raise RuleError("COLLAPSE needs d >= 1")
        rules = builtin_ruleset("IFK", sig).rules + _collapse_rules(sig, collapse)
    elif name in ("Bprime", "B'"):
        name = "Bprime"
        rules = [_rule(sig, "bone-trivial", BONE, "empty", "bone(gr)", "scalar")]
    else:
        raise RuleError(f"unknown rule set {name!r}")
    return RuleSet(name, rules, sig, collapse)


# ------------------------------------------------------------------------------------------
# serialisation


def dump_ruleset(rs: RuleSet) -> str:
    out = [f"ruleset {rs.name}"]
    for r in rs.rules:
        out.append(f"rule {r.name} {r.tag} {r.category}")
        for side, d in (("lhs", r.lhs), ("rhs", r.rhs)):
            out.append(side)
            out.extend("  " + ln for ln in dump_graph(d).splitlines())
    return "\n".join(out) + "\n"


def parse_ruleset(text: str, signature: TheorySignature | None = None) -> RuleSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("ruleset "):
        raise RuleError("missing 'ruleset' header")
    name = lines[0].split(None, 1)[1].strip()
    rules: list[Rule] = []
    sig = signature
    k = 1
    while k < len(lines):
        if not lines[k].strip():
            k += 1
            continue
        parts = lines[k].split()
        if parts[0] != "rule" or len(parts) < 3:
            raise RuleError(f"line {k + 1}: expected 'rule <name> <tag>'")
        rname, tag = parts[1], parts[2]
        cat = parts[3] if len(parts) > 3 else "structural"
        k += 1
        sides = {}
        for side in ("lhs", "rhs"):
            if k >= len(lines) or lines[k].strip() != side:
                raise RuleError(f"line {k + 1}: expected {side!r}")
            k += 1
            block = []
            while k < len(lines) and lines[k].startswith("  "):
                block.append(lines[k][2:])
                k += 1
            sides[side] = parse_graph("\n".join(block), sig)
            sig = sig or sides[side].signature
        rules.append(Rule(rname, sides["lhs"], sides["rhs"], tag, cat))
    return RuleSet(name, rules, sig or TheorySignature())
