"""Check that the three directed laws combining M, C and PG satisfy the Yang-Baxter hexagon.

Morphisms of the three PROPs are kept combinatorial:

* C (copying), ``l -> n``: a map ``f`` from the ``n`` outputs to the ``l`` inputs;
* M (merging), ``n -> k``: a map ``h`` from the ``n`` inputs to the ``k`` outputs;
* PG (phases), ``n -> n``: a tuple of ``n`` group elements.

The laws rewrite ``C;M -> M;C`` (pushout into connected components),
``C;PG -> PG;C`` (sum the phases of all copies onto the copied wire) and
``PG;M -> M;PG`` (sum the phases of all merged wires onto the output).
Starting from ``C;PG;M``, both sides of the hexagon end in ``M;PG;C``; each
end point is drawn as a green-spider diagram and evaluated in a model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..abelian import GroupElement
from ..diagram import Builder, Diagram, Node
from ..linalg import Matrix


def _pushout(l: int, f: tuple[int, ...], k: int, h: tuple[int, ...]):
    """C;M -> M;C: glue inputs and outputs along the middle wires.

    Returns ``(m_map, p, c_map)`` with ``m_map`` sending inputs to components
    and ``c_map`` sending outputs to components (components numbered by first
    appearance, inputs before outputs).
    """
    parent = list(range(l + k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(len(f)):
        a, b = find(f[j]), find(l + h[j])
        if a != b:
            parent[max(a, b)] = min(a, b)
    number: dict[int, int] = {}
    for x in range(l + k):
        number.setdefault(find(x), len(number))
    m_map = tuple(number[find(i)] for i in range(l))
    c_map = tuple(number[find(l + q)] for q in range(k))
    return m_map, len(number), c_map


def law_frobenius(c, m):
    """``C;M -> M;C``."""
    l, f, h = c[1], c[2], m[2]
    k = _codomain(m)
    m_map, p, c_map = _pushout(l, f, k, h)
    return ("M", l, m_map, p), ("C", p, c_map)


def law_copy_phase(c, g, group):
    """``C;PG -> PG;C``: phases on the copies are summed onto the copied wire."""
    _, l, f = c
    phases = [group.zero() for _ in range(l)]
    for j, i in enumerate(f):
        phases[i] = phases[i] + g[1][j]
    return ("P", tuple(phases)), c


def law_phase_merge(g, m, group):
    """``PG;M -> M;PG``: phases on merged wires are summed onto the output."""
    k = _codomain(m)
    phases = [group.zero() for _ in range(k)]
    for j, q in enumerate(m[2]):
        phases[q] = phases[q] + g[1][j]
    return m, ("P", tuple(phases))


def corrupted_copy_phase(c, g, group):
    """A wrong version of the copy/phase law: keeps only the first copy's phase."""
    _, l, f = c
    phases = [None] * l
    for j, i in enumerate(f):
        if phases[i] is None:
            phases[i] = g[1][j]
    return ("P", tuple(p if p is not None else group.zero() for p in phases)), c


def _codomain(m) -> int:
    return m[3] if len(m) > 3 else (max(m[2]) + 1 if m[2] else 0)


@dataclass
class YBLaws:
    frobenius: Callable = law_frobenius
    copy_phase: Callable = law_copy_phase
    phase_merge: Callable = law_phase_merge


def path_via_copy_first(c, g, m, group, laws: YBLaws):
    """rho, then lambda_F, then sigma."""
    g1, c1 = laws.copy_phase(c, g, group)
    m1, c2 = laws.frobenius(c1, m)
    m2, g2 = laws.phase_merge(g1, m1, group)
    return (m2, g2, c2)


def path_via_merge_first(c, g, m, group, laws: YBLaws):
    """sigma, then lambda_F, then rho."""
    m1, g1 = laws.phase_merge(g, m, group)
    m2, c1 = laws.frobenius(c, m1)
    g2, c2 = laws.copy_phase(c1, g1, group)
    return (m2, g2, c2)


def stages_diagram(stages, inputs: int, signature) -> Diagram:
    """Draw a sequence of stages as a diagram of green spiders."""
    b = Builder(signature)
    wires = [b.add_input() for _ in range(inputs)]
    for st in stages:
        if st[0] == "C":
            f = st[2]
            counts = [0] * len(wires)
            for i in f:
                counts[i] += 1
            nodes = [b.add(Node("G", 1, counts[i], signature.green.zero())) for i in range(len(wires))]
            for i, w in enumerate(wires):
                b.connect(w, (nodes[i], 0))
            used = [0] * len(wires)
            new = []
            for i in f:
                new.append(b.out_port(nodes[i], used[i]))
                used[i] += 1
            wires = new
        elif st[0] == "M":
            h, k = st[2], _codomain(st)
            counts = [0] * k
            for q in h:
                counts[q] += 1
            nodes = [b.add(Node("G", counts[q], 1, signature.green.zero())) for q in range(k)]
            used = [0] * k
            for j, q in enumerate(h):
                b.connect(wires[j], (nodes[q], used[q]))
                used[q] += 1
            wires = [b.out_port(nd, 0) for nd in nodes]
        else:
            new = []
            for w, ph in zip(wires, st[1]):
                if ph.is_zero():
                    new.append(w)
                    continue
                nd = b.add(Node("G", 1, 1, ph))
                b.connect(w, (nd, 0))
                new.append(b.out_port(nd, 0))
            wires = new
    for w in wires:
        b.add_output(w)
    return b.build()


def _phase_samples(group) -> list[GroupElement]:
    if group.finite:
        return list(group.elements())
    return [group.element(Fraction(k, 4)) for k in range(4)]


def generator_triples(group, max_arity: int = 2):
    """All ``(C, PG, M)`` triples with every arity at most ``max_arity``."""
    samples = _phase_samples(group)
    for l, n, k in itertools.product(range(max_arity + 1), repeat=3):
        for f in itertools.product(range(l), repeat=n):
            for h in itertools.product(range(k), repeat=n):
                for ph in itertools.product(samples, repeat=n):
                    yield ("C", l, f), ("P", ph), ("M", n, h, k)


@dataclass
class YBFailure:
    triple: tuple
    left: Matrix
    right: Matrix

    def describe(self) -> str:
        c, g, m = self.triple
        phases = ",".join(str(p) for p in g[1])
        return f"C{c[2]} on {c[1]} wires; phases ({phases}); M{m[2]} into {m[3]}"


@dataclass
class YBReport:
    checked: int = 0
    failures: list[YBFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_yang_baxter(model, laws: YBLaws | None = None, max_arity: int = 2) -> YBReport:
    """Evaluate both hexagon paths for every generator triple and compare."""
    from ..model.evaluate import evaluate

    laws = laws or YBLaws()
    sig = model.signature
    group = sig.green
    report = YBReport()
    for c, g, m in generator_triples(group, max_arity):
        left = path_via_copy_first(c, g, m, group, laws)
        right = path_via_merge_first(c, g, m, group, laws)
        ml = evaluate(stages_diagram(left, c[1], sig), model)
        mr = evaluate(stages_diagram(right, c[1], sig), model)
        report.checked += 1
        if ml != mr:
            report.failures.append(YBFailure((c, g, m), ml, mr))
    return report


__all__ = [
    "YBLaws",
    "YBReport",
    "YBFailure",
    "check_yang_baxter",
    "corrupted_copy_phase",
    "generator_triples",
    "law_copy_phase",
    "law_frobenius",
    "law_phase_merge",
    "path_via_copy_first",
    "path_via_merge_first",
    "stages_diagram",
]
