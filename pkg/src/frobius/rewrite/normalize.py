"""Spider normal form: fuse same-coloured neighbours, drop self-loops and bare phase-free spiders."""

from __future__ import annotations

from dataclasses import dataclass

from ..diagram import Diagram, Node


@dataclass(frozen=True)
class NormStep:
    kind: str  # "fuse", "loop" or "identity"
    site: tuple[int, ...]


def _remove_self_loops(d: Diagram) -> tuple[Diagram, NormStep] | None:
    for i in d.interior():
        nd = d.nodes[i]
        if not nd.is_spider:
            continue
        loops = [(dp, sp) for (dn, dp), (sn, sp) in d.edges.items() if dn == i and sn == i]
        if not loops:
            continue
        in_drop = {dp for dp, _ in loops}
        out_drop = {sp for _, sp in loops}
        return _reshape(d, i, in_drop, out_drop, nd.phase), NormStep("loop", (i,))
    return None


def _reshape(d: Diagram, i: int, in_drop: set[int], out_drop: set[int], phase) -> Diagram:
    """Replace spider ``i`` by one without the given ports, renumbering the rest."""
    nd = d.nodes[i]
    keep_in = [p for p in range(nd.m) if p not in in_drop]
    keep_out = [p for p in range(nd.m, nd.m + nd.n) if p not in out_drop]
    new = Node(nd.kind, len(keep_in), len(keep_out), phase)
    ren_in = {p: k for k, p in enumerate(keep_in)}
    ren_out = {p: new.m + k for k, p in enumerate(keep_out)}
    edges = {}
    for (dn, dp), (sn, sp) in d.edges.items():
        if dn == i and dp in in_drop:
            continue
        if dn == i:
            dp = ren_in[dp]
        if sn == i:
            sp = ren_out[sp]
        edges[(dn, dp)] = (sn, sp)
    nodes = dict(d.nodes)
    nodes[i] = new
    return Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors, check=False)


def _fuse_pair(d: Diagram, a: int, b: int) -> Diagram:
    """Fuse spiders ``a`` and ``b`` (same colour, at least one wire between them) into ``a``."""
    na, nb = d.nodes[a], d.nodes[b]
    between = {dst: src for dst, src in d.edges.items() if {dst[0], src[0]} == {a, b}}
    # new port lists: (old node, old port)
    ins = [(a, p) for p in range(na.m) if d.edges[(a, p)][0] != b] + [
        (b, p) for p in range(nb.m) if d.edges[(b, p)][0] != a
    ]
    a_out_to_b = {src[1] for dst, src in between.items() if src[0] == a}
    b_out_to_a = {src[1] for dst, src in between.items() if src[0] == b}
    outs = [(a, p) for p in range(na.m, na.m + na.n) if p not in a_out_to_b] + [
        (b, p) for p in range(nb.m, nb.m + nb.n) if p not in b_out_to_a
    ]
    new = Node(na.kind, len(ins), len(outs), na.phase + nb.phase)
    ren = {old: (a, k) for k, old in enumerate(ins)}
    ren.update({old: (a, new.m + k) for k, old in enumerate(outs)})
    edges = {}
    for dst, src in d.edges.items():
        if dst in between:
            continue
        edges[ren.get(dst, dst)] = ren.get(src, src)
    nodes = dict(d.nodes)
    nodes[a] = new
    del nodes[b]
    return Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors, check=False)


def _find_fusion(d: Diagram) -> tuple[int, int] | None:
    pairs = set()
    for (dn, _), (sn, _) in d.edges.items():
        if dn == sn:
            continue
        x, y = d.nodes[dn], d.nodes[sn]
        if x.is_spider and x.kind == y.kind:
            pairs.add((min(dn, sn), max(dn, sn)))
    return min(pairs) if pairs else None


def _find_identity(d: Diagram) -> int | None:
    for i in d.interior():
        nd = d.nodes[i]
        if nd.is_spider and nd.m == 1 and nd.n == 1 and nd.phase_is_zero():
            if d.edges[(i, 0)][0] != i:
                return i
    return None


def _remove_identity(d: Diagram, i: int) -> Diagram:
    src = d.edges[(i, 0)]
    dst = d.successor_map()[(i, 1)]
    edges = {k: v for k, v in d.edges.items() if k[0] != i}
    edges[dst] = src
    nodes = {k: v for k, v in d.nodes.items() if k != i}
    return Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors, check=False)


def normalize_step(d: Diagram) -> tuple[Diagram, NormStep] | None:
    """One normalisation step, or None at the fixpoint."""
    r = _remove_self_loops(d)
    if r is not None:
        return r
    pair = _find_fusion(d)
    if pair is not None:
        return _fuse_pair(d, *pair), NormStep("fuse", pair)
    i = _find_identity(d)
    if i is not None:
        return _remove_identity(d, i), NormStep("identity", (i,))
    return None


def normalize_spiders(d: Diagram, trace: list | None = None) -> Diagram:
    divisors = tuple(normalize_spiders(x) for x in d.divisors)
    d = d.copy(divisors=divisors)
    while True:
        r = normalize_step(d)
        if r is None:
            d.validate()
            return d
        d, step = r
        if trace is not None:
            trace.append(step)


def factorization(d: Diagram) -> tuple[int, int, int]:
    """For a normalised single-colour diagram, return ``(n, k, n')``.

    The diagram factors as a monoid part ``n -> k``, then ``k`` parallel phases,
    then a comonoid part ``k -> n'``: ``k`` counts the spiders.
    """
    spiders = [i for i in d.interior() if d.nodes[i].is_spider]
    if len({d.nodes[i].kind for i in spiders}) > 1 or any(not d.nodes[i].is_spider for i in d.interior()):
        raise ValueError("factorization needs a single-colour spider diagram")
    return d.arity[0], len(spiders), d.arity[1]
