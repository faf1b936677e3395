"""Open two-coloured spider diagrams.

A diagram is a directed multigraph.  Every node has ``m`` input ports numbered
``0..m-1`` and ``n`` output ports numbered ``m..m+n-1``.  Boundary wires end
on boundary nodes: an input boundary is a ``B`` node with one output port, an
output boundary is a ``B`` node with one input port.  ``edges`` maps every
input port to the output port feeding it, so each port is used exactly once.

Closed sub-diagrams are scalars and stay in the graph.  ``divisors`` holds
closed diagrams that the value is divided by; they only appear when a rule
whose left side carries a scalar is applied to a host lacking that scalar.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .abelian import AbelianGroup, GroupElement

Port = tuple[int, int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class TheorySignature:
    """Phase groups of the two colours plus optional classical subgroups.

    ``green_classical`` lists generators in the red phase group: red points with
    those phases are copied by green.  ``red_classical`` lists generators in the
    green phase group, dually.
    """

    green: AbelianGroup = field(default_factory=lambda: AbelianGroup(circle=True))
    red: AbelianGroup = field(default_factory=lambda: AbelianGroup(circle=True))
    green_classical: tuple[GroupElement, ...] | None = None
    red_classical: tuple[GroupElement, ...] | None = None

    def __post_init__(self):
        for g in self.green_classical or ():
            if g.group != self.red:
                raise DiagramError(f"green-classical generator {g!r} is not in {self.red}")
        for g in self.red_classical or ():
            if g.group != self.green:
                raise DiagramError(f"red-classical generator {g!r} is not in {self.green}")

    @classmethod
    def standard(cls, group: AbelianGroup) -> TheorySignature:
        """(G, G) with both classical subgroups equal to G, as for the qudit model of G."""
        gens = tuple(group.element(tuple(1 if i == k else 0 for i in range(len(group.factors)))) for k in range(len(group.factors)))
        return cls(group, group, gens, gens)

    @classmethod
    def trivial(cls) -> TheorySignature:
        return cls(AbelianGroup(()), AbelianGroup(()))

    def group_of(self, kind: str) -> AbelianGroup:
        return self.green if kind == "G" else self.red

    def __str__(self) -> str:
        return f"{self.green} {self.red}"


@dataclass(frozen=True)
class Node:
    kind: str  # 'G', 'R', 'S' (antipode) or 'B' (boundary)
    m: int
    n: int
    phase: GroupElement | None = None

    def __post_init__(self):
        if self.kind not in "GRSB" or len(self.kind) != 1:
            raise DiagramError(f"bad node kind {self.kind!r}")
        if self.m < 0 or self.n < 0:
            raise DiagramError("negative arity")
        if self.kind == "S" and (self.m, self.n) != (1, 1):
            raise DiagramError("the antipode is 1 -> 1")
        if self.kind == "B" and (self.m, self.n) not in ((0, 1), (1, 0)):
            raise DiagramError("boundary nodes carry one port")
        if self.kind in "GR" and self.phase is None:
            raise DiagramError("spiders carry a phase")

    @property
    def is_spider(self) -> bool:
        return self.kind in "GR"

    def phase_is_zero(self) -> bool:
        return self.phase is None or self.phase.is_zero()

    def label(self):
        return (self.kind, self.m, self.n, None if self.phase is None else self.phase.coords)


def green(m: int, n: int, phase: GroupElement) -> Node:
    return Node("G", m, n, phase)


def red(m: int, n: int, phase: GroupElement) -> Node:
    return Node("R", m, n, phase)


ANTIPODE = Node("S", 1, 1)
IN_B = Node("B", 0, 1)
OUT_B = Node("B", 1, 0)


class Diagram:
    __slots__ = ("signature", "nodes", "edges", "inputs", "outputs", "divisors", "_hash")

    def __init__(
        self,
        signature: TheorySignature,
        nodes: dict[int, Node],
        edges: dict[Port, Port],
        inputs: Sequence[int],
        outputs: Sequence[int],
        divisors: Iterable[Diagram] = (),
        check: bool = True,
    ):
        self.signature = signature
        self.nodes = dict(nodes)
        self.edges = dict(edges)
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.divisors = tuple(divisors)
        self._hash = None
        if check:
            self.validate()

    # -- basic structure -------------------------------------------------------------------
    def validate(self) -> None:
        used_out: set[Port] = set()
        for nid, node in self.nodes.items():
            for p in range(node.m):
                if (nid, p) not in self.edges:
                    raise DiagramError(f"input port {nid}:{p} is unconnected")
        for (dn, dp), (sn, sp) in self.edges.items():
            if dn not in self.nodes or sn not in self.nodes:
                raise DiagramError("edge refers to a missing node")
            if not 0 <= dp < self.nodes[dn].m:
                raise DiagramError(f"{dn}:{dp} is not an input port")
            sm = self.nodes[sn]
            if not sm.m <= sp < sm.m + sm.n:
                raise DiagramError(f"{sn}:{sp} is not an output port")
            if (sn, sp) in used_out:
                raise DiagramError(f"output port {sn}:{sp} used twice")
            used_out.add((sn, sp))
        n_out = sum(nd.n for nd in self.nodes.values())
        if len(used_out) != n_out:
            raise DiagramError("some output port is unconnected")
        bset = {i for i, nd in self.nodes.items() if nd.kind == "B"}
        if set(self.inputs) | set(self.outputs) != bset or len(self.inputs) + len(self.outputs) != len(bset):
            raise DiagramError("boundary lists do not match boundary nodes")
        for i in self.inputs:
            if self.nodes[i] != IN_B:
                raise DiagramError("input boundary must be an output-port boundary node")
        for o in self.outputs:
            if self.nodes[o] != OUT_B:
                raise DiagramError("output boundary must be an input-port boundary node")
        for d in self.divisors:
            if d.arity != (0, 0):
                raise DiagramError("divisors must be closed diagrams")

    @property
    def arity(self) -> tuple[int, int]:
        return len(self.inputs), len(self.outputs)

    def successor_map(self) -> dict[Port, Port]:
        return {src: dst for dst, src in self.edges.items()}

    def interior(self) -> list[int]:
        return sorted(i for i, nd in self.nodes.items() if nd.kind != "B")

    def copy(self, **changes) -> Diagram:
        kw = dict(
            signature=self.signature,
            nodes=self.nodes,
            edges=self.edges,
            inputs=self.inputs,
            outputs=self.outputs,
            divisors=self.divisors,
        )
        kw.update(changes)
        return Diagram(**kw)

    def relabel(self, offset: int) -> Diagram:
        return Diagram(
            self.signature,
            {i + offset: nd for i, nd in self.nodes.items()},
            {(a + offset, p): (b + offset, q) for (a, p), (b, q) in self.edges.items()},
            [i + offset for i in self.inputs],
            [o + offset for o in self.outputs],
            self.divisors,
            check=False,
        )

    def compact(self) -> Diagram:
        """Renumber nodes 0..k-1: inputs first, then interior in id order, then outputs."""
        order = list(self.inputs) + self.interior() + list(self.outputs)
        ren = {old: new for new, old in enumerate(order)}
        return Diagram(
            self.signature,
            {ren[i]: self.nodes[i] for i in order},
            {(ren[a], p): (ren[b], q) for (a, p), (b, q) in self.edges.items()},
            [ren[i] for i in self.inputs],
            [ren[o] for o in self.outputs],
            self.divisors,
            check=False,
        )

    def next_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    # -- structural queries -----------------------------------------------------------------
    def neighbours(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in self.nodes}
        for (a, _), (b, _) in self.edges.items():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def components(self) -> list[set[int]]:
        adj = self.neighbours()
        seen: set[int] = set()
        comps = []
        for start in sorted(self.nodes):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def closed_components(self) -> list[set[int]]:
        return [c for c in self.components() if all(self.nodes[i].kind != "B" for i in c)]

    def subdiagram(self, ids: set[int]) -> Diagram:
        """The closed sub-diagram on ``ids`` (which must not touch other nodes)."""
        return Diagram(
            self.signature,
            {i: self.nodes[i] for i in ids},
            {k: v for k, v in self.edges.items() if k[0] in ids},
            (),
            (),
        )

    def without(self, ids: set[int]) -> Diagram:
        return Diagram(
            self.signature,
            {i: nd for i, nd in self.nodes.items() if i not in ids},
            {k: v for k, v in self.edges.items() if k[0] not in ids},
            self.inputs,
            self.outputs,
            self.divisors,
        )

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def colors(self) -> set[str]:
        return {nd.kind for nd in self.nodes.values() if nd.kind != "B"}

    def spider_count(self) -> int:
        return sum(1 for nd in self.nodes.values() if nd.kind != "B")

    # -- equality -----------------------------------------------------------------------------
    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        inpos = {b: i for i, b in enumerate(self.inputs)}
        outpos = {b: i for i, b in enumerate(self.outputs)}
        for i, nd in self.nodes.items():
            if nd.kind == "B":
                lab = ("in", inpos[i]) if i in inpos else ("out", outpos[i])
            else:
                lab = nd.label()
            g.add_node(i, label=lab)
        for (a, _), (b, _) in self.edges.items():
            g.add_edge(b, a)
        return g

    def invariant(self):
        """A cheap isomorphism invariant."""
        labs = Counter(nd.label() for nd in self.nodes.values())
        deg = Counter()
        for (a, _), (b, _) in self.edges.items():
            deg[(self.nodes[b].label(), self.nodes[a].label())] += 1
        return (
            self.arity,
            tuple(sorted(labs.items(), key=repr)),
            tuple(sorted(deg.items(), key=repr)),
            tuple(sorted(d.invariant() for d in self.divisors)) if self.divisors else (),
        )

    def isomorphic(self, other: Diagram) -> bool:
        if self.signature != other.signature or self.invariant() != other.invariant():
            return False
        if len(self.divisors) != len(other.divisors):
            return False
        if not _match_multisets(self.divisors, other.divisors):
            return False
        return nx.is_isomorphic(
            self.to_networkx(),
            other.to_networkx(),
            node_match=lambda x, y: x["label"] == y["label"],
        )

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.isomorphic(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.invariant())
        return self._hash

    def __repr__(self) -> str:
        from .terms import print_term

        try:
            return f"Diagram({print_term(self)})"
        except Exception:  # pragma: no cover - repr must not fail
            return f"Diagram(<{len(self.nodes)} nodes>)"


def _match_multisets(xs: Sequence[Diagram], ys: Sequence[Diagram]) -> bool:
    remaining = list(ys)
    for x in xs:
        for k, y in enumerate(remaining):
            if x.isomorphic(y):
                del remaining[k]
                break
        else:
            return False
    return True


# ------------------------------------------------------------------------------------------
# builders


class Builder:
    """Incremental construction of a diagram."""

    def __init__(self, signature: TheorySignature):
        self.signature = signature
        self.nodes: dict[int, Node] = {}
        self.edges: dict[Port, Port] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []

    def add(self, node: Node) -> int:
        i = len(self.nodes)
        self.nodes[i] = node
        return i

    def add_input(self) -> Port:
        i = self.add(IN_B)
        self.inputs.append(i)
        return (i, 0)

    def add_output(self, src: Port) -> None:
        o = self.add(OUT_B)
        self.outputs.append(o)
        self.connect(src, (o, 0))

    def connect(self, src: Port, dst: Port) -> None:
        if dst in self.edges:
            raise DiagramError(f"port {dst} already connected")
        self.edges[dst] = src

    def out_port(self, nid: int, k: int) -> Port:
        return (nid, self.nodes[nid].m + k)

    def build(self, divisors: Iterable[Diagram] = ()) -> Diagram:
        return Diagram(self.signature, self.nodes, self.edges, self.inputs, self.outputs, divisors)


def from_node(node: Node, signature: TheorySignature) -> Diagram:
    """The diagram consisting of one generator with its ports in order on the boundary."""
    b = Builder(signature)
    ins = [b.add_input() for _ in range(node.m)]
    nid = b.add(node)
    for k, src in enumerate(ins):
        b.connect(src, (nid, k))
    for k in range(node.n):
        b.add_output(b.out_port(nid, k))
    return b.build()


def identity(k: int, signature: TheorySignature | None = None) -> Diagram:
    b = Builder(signature or TheorySignature())
    ins = [b.add_input() for _ in range(k)]
    for src in ins:
        b.add_output(src)
    return b.build()


def empty(signature: TheorySignature | None = None) -> Diagram:
    return identity(0, signature)


def permutation(perm: Sequence[int], signature: TheorySignature | None = None) -> Diagram:
    """Wiring sending input ``i`` to output ``perm[i]``."""
    b = Builder(signature or TheorySignature())
    ins = [b.add_input() for _ in perm]
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    for j in range(len(perm)):
        b.add_output(ins[inv[j]])
    return b.build()


def swap(signature: TheorySignature | None = None) -> Diagram:
    return permutation([1, 0], signature)


def spider(color: str, m: int, n: int, phase: GroupElement | None = None, signature: TheorySignature | None = None) -> Diagram:
    sig = signature or TheorySignature()
    kind = {"g": "G", "green": "G", "G": "G", "r": "R", "red": "R", "R": "R"}[color]
    grp = sig.group_of(kind)
    if phase is None:
        phase = grp.zero()
    elif phase.group != grp:
        raise DiagramError(f"phase {phase!r} is not in {grp}")
    return from_node(Node(kind, m, n, phase), sig)


def antipode(signature: TheorySignature | None = None) -> Diagram:
    return from_node(ANTIPODE, signature or TheorySignature())


# ------------------------------------------------------------------------------------------
# operations


def _check_sig(a: Diagram, b: Diagram) -> None:
    if a.signature != b.signature:
        raise DiagramError(f"signature mismatch: {a.signature} vs {b.signature}")


def d_compose(a: Diagram, b: Diagram) -> Diagram:
    """``a`` then ``b``: the outputs of ``a`` are glued to the inputs of ``b``."""
    _check_sig(a, b)
    if a.arity[1] != b.arity[0]:
        raise DiagramError(f"cannot compose {a.arity} with {b.arity}")
    b = b.relabel(a.next_id())
    nodes = {**a.nodes, **b.nodes}
    edges = {**a.edges, **b.edges}
    succ_b = b.successor_map()
    for oa, ib in zip(a.outputs, b.inputs):
        src = edges.pop((oa, 0))
        dst = succ_b[(ib, 0)]
        edges[dst] = src
        del nodes[oa], nodes[ib]
    return Diagram(a.signature, nodes, edges, a.inputs, b.outputs, a.divisors + b.divisors)


def d_tensor(a: Diagram, b: Diagram) -> Diagram:
    _check_sig(a, b)
    b = b.relabel(a.next_id())
    return Diagram(
        a.signature,
        {**a.nodes, **b.nodes},
        {**a.edges, **b.edges},
        a.inputs + b.inputs,
        a.outputs + b.outputs,
        a.divisors + b.divisors,
    )


def compose_all(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = d_compose(out, d)
    return out


def tensor_all(*ds: Diagram, signature: TheorySignature | None = None) -> Diagram:
    if not ds:
        return empty(signature)
    out = ds[0]
    for d in ds[1:]:
        out = d_tensor(out, d)
    return out


def _dagger_node(nd: Node) -> Node:
    return Node(nd.kind, nd.n, nd.m, None if nd.phase is None else -nd.phase)


def d_dagger(a: Diagram) -> Diagram:
    nodes = {i: _dagger_node(nd) for i, nd in a.nodes.items()}
    edges = {}
    for (dn, dp), (sn, sp) in a.edges.items():
        old_src = a.nodes[sn]
        old_dst = a.nodes[dn]
        # old output port sp of sn becomes input port sp - m of sn
        edges[(sn, sp - old_src.m)] = (dn, old_dst.n + dp)
    return Diagram(a.signature, nodes, edges, a.outputs, a.inputs, tuple(d_dagger(x) for x in a.divisors))


def d_transpose(a: Diagram, color: str = "G") -> Diagram:
    """Bend every wire with the chosen colour's phase-free cups and caps.

    Port order is preserved, so in a model the transpose with the green
    structure is the ordinary matrix transpose.
    """
    kind = {"g": "G", "green": "G", "G": "G", "r": "R", "red": "R", "R": "R"}[color]
    zero = a.signature.group_of(kind).zero()
    nodes = dict(a.nodes)
    edges = dict(a.edges)
    nxt = a.next_id()
    succ = a.successor_map()
    new_outputs = []
    new_inputs = []
    for ib in a.inputs:
        cup = nxt
        out_b = nxt + 1
        nxt += 2
        nodes[cup] = Node(kind, 0, 2, zero)
        nodes[out_b] = OUT_B
        dst = succ[(ib, 0)]
        del nodes[ib]
        edges[dst] = (cup, 0)
        edges[(out_b, 0)] = (cup, 1)
        new_outputs.append(out_b)
    for ob in a.outputs:
        cap = nxt
        in_b = nxt + 1
        nxt += 2
        nodes[cap] = Node(kind, 2, 0, zero)
        nodes[in_b] = IN_B
        src = edges.pop((ob, 0))
        del nodes[ob]
        # a direct input-output wire has its source rewired above
        edges[(cap, 0)] = src
        edges[(cap, 1)] = (in_b, 0)
        new_inputs.append(in_b)
    return Diagram(a.signature, nodes, edges, new_inputs, new_outputs, a.divisors)


def with_signature(d: Diagram, sig: TheorySignature) -> Diagram:
    """Reinterpret phases in another signature (phases are re-embedded by coordinates)."""
    nodes = {}
    for i, nd in d.nodes.items():
        if nd.is_spider:
            grp = sig.group_of(nd.kind)
            nodes[i] = Node(nd.kind, nd.m, nd.n, grp.element(nd.phase.coords))
        else:
            nodes[i] = nd
    return Diagram(sig, nodes, d.edges, d.inputs, d.outputs, tuple(with_signature(x, sig) for x in d.divisors))


def internal_integer_diagram(n: int, signature: TheorySignature | None = None) -> Diagram:
    """The internal integer ``n`` as a 1 -> 1 diagram.

    ``0`` is the green counit followed by the red unit; ``n >= 1`` is a green
    1 -> n spider joined to a red n -> 1 spider by ``n`` parallel wires (which
    unfolds the convolution recursion ``n+1 = n + 1``); negative integers
    follow ``|n|`` with the antipode.
    """
    sig = signature or TheorySignature()
    k = abs(n)
    b = Builder(sig)
    src = b.add_input()
    gz, rz = sig.green.zero(), sig.red.zero()
    if k == 0:
        c = b.add(Node("G", 1, 0, gz))
        b.connect(src, (c, 0))
        u = b.add(Node("R", 0, 1, rz))
        last = (u, 0)
    elif k == 1:
        last = src
    else:
        g = b.add(Node("G", 1, k, gz))
        r = b.add(Node("R", k, 1, rz))
        b.connect(src, (g, 0))
        for i in range(k):
            b.connect((g, 1 + i), (r, i))
        last = (r, k)
    if n < 0:
        s = b.add(ANTIPODE)
        b.connect(last, (s, 0))
        last = (s, 1)
    b.add_output(last)
    return b.build()


def bone(signature: TheorySignature | None = None, flipped: bool = False) -> Diagram:
    """The closed diagram red unit then green counit (or its dagger when ``flipped``)."""
    sig = signature or TheorySignature()
    if flipped:
        return d_compose(spider("g", 0, 1, None, sig), spider("r", 1, 0, None, sig))
    return d_compose(spider("r", 0, 1, None, sig), spider("g", 1, 0, None, sig))


# ------------------------------------------------------------------------------------------
# graph dump


def _phase_text(nd: Node) -> str:
    return "-" if nd.phase is None else str(nd.phase)


def dump_graph(d: Diagram, with_signature_line: bool = True) -> str:
    lines = ["frobius-graph v1"]
    if with_signature_line:
        lines.append(f"signature {d.signature.green} {d.signature.red}")
    for i in sorted(d.nodes):
        nd = d.nodes[i]
        lines.append(f"node {i} {nd.kind} {nd.m} {nd.n} {_phase_text(nd)}")
    for (dn, dp), (sn, sp) in sorted(d.edges.items(), key=lambda kv: (kv[1], kv[0])):
        lines.append(f"edge {sn}:{sp} {dn}:{dp}")
    lines.append("in" + "".join(f" {i}:0" for i in d.inputs))
    lines.append("out" + "".join(f" {o}:0" for o in d.outputs))
    for div in d.divisors:
        lines.append("divide")
        lines.extend("  " + ln for ln in dump_graph(div, False).splitlines()[1:])
    return "\n".join(lines) + "\n"


def parse_graph(text: str, signature: TheorySignature | None = None) -> Diagram:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].strip() != "frobius-graph v1":
        raise DiagramError("missing 'frobius-graph v1' header")
    sig = signature
    nodes: dict[int, Node] = {}
    edges: dict[Port, Port] = {}
    inputs: list[int] = []
    outputs: list[int] = []
    divisors: list[Diagram] = []
    k = 1
    while k < len(lines):
        ln = lines[k]
        if ln.startswith("  "):
            raise DiagramError(f"line {k + 1}: unexpected indentation")
        parts = ln.split()
        head = parts[0]
        try:
            if head == "signature":
                if sig is None:
                    sig = TheorySignature(AbelianGroup.parse(parts[1]), AbelianGroup.parse(parts[2]))
            elif head == "node":
                sig = sig or TheorySignature()
                nid, kind, m, n, ph = int(parts[1]), parts[2], int(parts[3]), int(parts[4]), parts[5]
                phase = None if ph == "-" else sig.group_of(kind).parse_element(ph)
                if nid in nodes:
                    raise DiagramError(f"duplicate node {nid}")
                nodes[nid] = Node(kind, m, n, phase)
            elif head == "edge":
                sn, sp = map(int, parts[1].split(":"))
                dn, dp = map(int, parts[2].split(":"))
                if (dn, dp) in edges:
                    raise DiagramError(f"port {dn}:{dp} connected twice")
                edges[(dn, dp)] = (sn, sp)
            elif head == "in":
                inputs = [int(p.split(":")[0]) for p in parts[1:]]
            elif head == "out":
                outputs = [int(p.split(":")[0]) for p in parts[1:]]
            elif head == "divide":
                block = []
                k += 1
                while k < len(lines) and lines[k].startswith("  "):
                    block.append(lines[k][2:])
                    k += 1
                divisors.append(parse_graph("frobius-graph v1\n" + "\n".join(block), sig))
                continue
            else:
                raise DiagramError(f"unknown record {head!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, DiagramError):
                raise DiagramError(f"line {k + 1}: {exc}") from exc
            raise DiagramError(f"line {k + 1}: malformed record {ln!r}") from exc
        k += 1
    return Diagram(sig or TheorySignature(), nodes, edges, inputs, outputs, divisors)


def to_dot(d: Diagram) -> str:
    colors = {"G": "palegreen", "R": "salmon", "S": "white", "B": "none"}
    lines = ["digraph frobius {", "  rankdir=TB;"]
    inpos = {b: i for i, b in enumerate(d.inputs)}
    for i in sorted(d.nodes):
        nd = d.nodes[i]
        if nd.kind == "B":
            lab = f"in{inpos[i]}" if i in inpos else f"out{d.outputs.index(i)}"
            lines.append(f'  n{i} [shape=plaintext,label="{lab}"];')
        elif nd.kind == "S":
            lines.append(f'  n{i} [shape=box,label="s"];')
        else:
            lab = "" if nd.phase_is_zero() else str(nd.phase)
            lines.append(f'  n{i} [shape=circle,style=filled,fillcolor={colors[nd.kind]},label="{lab}"];')
    for (dn, _), (sn, _) in sorted(d.edges.items(), key=lambda kv: (kv[1], kv[0])):
        lines.append(f"  n{sn} -> n{dn} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def all_ports(d: Diagram) -> Iterable[Port]:
    for i, nd in d.nodes.items():
        for p in range(nd.m + nd.n):
            yield (i, p)


__all__ = [
    "Diagram",
    "DiagramError",
    "Node",
    "TheorySignature",
    "Builder",
    "d_compose",
    "d_tensor",
    "d_dagger",
    "d_transpose",
    "identity",
    "empty",
    "swap",
    "permutation",
    "spider",
    "antipode",
    "internal_integer_diagram",
    "bone",
    "dump_graph",
    "parse_graph",
    "to_dot",
    "with_signature",
    "compose_all",
    "tensor_all",
]
