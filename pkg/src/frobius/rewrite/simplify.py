"""Bounded, deterministic simplification with an auditable trace."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagram import Diagram, Node, bone
from .match import apply_rule, cancel_divisors, find_matches
from .normalize import normalize_step
from .rules import CATEGORY_ORDER, RuleSet


@dataclass
class TraceStep:
    index: int
    rule: str
    site: str
    diagram: Diagram

    def line(self) -> str:
        return f"step {self.index} {self.rule} {self.site}"


@dataclass
class SimplifyResult:
    diagram: Diagram
    trace: list[TraceStep] = field(default_factory=list)
    exhausted: bool = False  # True when the step budget ran out

    def trace_text(self) -> str:
        return "\n".join(s.line() for s in self.trace)


def _bundle_site(d: Diagram, modulus: int):
    """First green/red pair joined by at least ``modulus`` parallel wires."""
    counts: dict[tuple[int, int], list] = {}
    for dst, src in d.edges.items():
        a, b = d.nodes[src[0]], d.nodes[dst[0]]
        if a.is_spider and b.is_spider and a.kind != b.kind:
            counts.setdefault((src[0], dst[0]), []).append(dst)
    for (s, t), wires in sorted(counts.items()):
        if len(wires) >= modulus:
            return s, t, sorted(wires)
    return None


def collapse_bundle(d: Diagram, modulus: int, site) -> Diagram:
    """Replace ``k`` parallel wires between a green and a red spider by ``k mod d`` wires.

    Each removed wire is compensated by a divisor: the bone for green-to-red
    bundles and its adjoint for red-to-green bundles.
    """
    s, t, wires = site
    k = len(wires)
    drop = k - k % modulus
    gone = wires[:drop]
    gone_src = {d.edges[w] for w in gone}
    src_node, dst_node = d.nodes[s], d.nodes[t]
    in_drop = {p for (_, p) in gone}
    out_drop = {p for (_, p) in gone_src}
    keep_in = [p for p in range(dst_node.m) if p not in in_drop]
    keep_out = [p for p in range(src_node.m, src_node.m + src_node.n) if p not in out_drop]
    new_dst = Node(dst_node.kind, len(keep_in), dst_node.n, dst_node.phase)
    new_src = Node(src_node.kind, src_node.m, len(keep_out), src_node.phase)
    ren_dst = {p: k for k, p in enumerate(keep_in)}
    ren_dst.update({p: new_dst.m + (p - dst_node.m) for p in range(dst_node.m, dst_node.m + dst_node.n)})
    ren_src = {p: new_src.m + k for k, p in enumerate(keep_out)}
    ren_src.update({p: p for p in range(src_node.m)})
    edges = {}
    for dst, src in d.edges.items():
        if dst in gone:
            continue
        if dst[0] == t:
            dst = (t, ren_dst[dst[1]])
        if src[0] == s:
            src = (s, ren_src[src[1]])
        if dst[0] == s:
            dst = (s, ren_src[dst[1]])
        if src[0] == t:
            src = (t, ren_dst[src[1]])
        edges[dst] = src
    nodes = dict(d.nodes)
    nodes[s], nodes[t] = new_src, new_dst
    flipped = src_node.kind == "R"
    div = bone(d.signature, flipped=flipped)
    out = Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors + (div,) * drop)
    return cancel_divisors(out)


def _hopf_bundle_site(d: Diagram):
    """A spider pair joined both by a plain wire and by a wire through one antipode."""
    succ = d.successor_map()
    plain: dict[tuple[int, int], list] = {}
    via_s: dict[tuple[int, int], list] = {}
    for dst, src in d.edges.items():
        a, b = d.nodes[src[0]], d.nodes[dst[0]]
        if a.is_spider and b.is_spider and a.kind != b.kind:
            plain.setdefault((src[0], dst[0]), []).append(dst)
        elif a.is_spider and b.kind == "S":
            out = succ[(dst[0], 1)]
            c = d.nodes[out[0]]
            if c.is_spider and c.kind != a.kind:
                via_s.setdefault((src[0], out[0]), []).append(dst[0])
    for key in sorted(set(plain) & set(via_s)):
        return key[0], key[1], min(plain[key]), min(via_s[key])
    return None


def cancel_hopf_pair(d: Diagram, site) -> Diagram:
    """Remove a plain wire and an antipode wire between the same two spiders (generalised Hopf law)."""
    s, t, wire, anti = site
    succ = d.successor_map()
    plain_src = d.edges[wire]
    anti_in_src = d.edges[(anti, 0)]
    anti_out_dst = succ[(anti, 1)]
    src_node, dst_node = d.nodes[s], d.nodes[t]
    out_drop = {plain_src[1], anti_in_src[1]}
    in_drop = {wire[1], anti_out_dst[1]}
    keep_out = [p for p in range(src_node.m, src_node.m + src_node.n) if p not in out_drop]
    keep_in = [p for p in range(dst_node.m) if p not in in_drop]
    new_src = Node(src_node.kind, src_node.m, len(keep_out), src_node.phase)
    new_dst = Node(dst_node.kind, len(keep_in), dst_node.n, dst_node.phase)
    ren_src = {p: p for p in range(src_node.m)}
    ren_src.update({p: new_src.m + k for k, p in enumerate(keep_out)})
    ren_dst = {p: k for k, p in enumerate(keep_in)}
    ren_dst.update({p: new_dst.m + (p - dst_node.m) for p in range(dst_node.m, dst_node.m + dst_node.n)})
    ren = {s: ren_src, t: ren_dst}
    edges = {}
    for dst, src in d.edges.items():
        if dst in (wire, anti_out_dst) or dst[0] == anti:
            continue
        dst = (dst[0], ren[dst[0]][dst[1]]) if dst[0] in ren else dst
        src = (src[0], ren[src[0]][src[1]]) if src[0] in ren else src
        edges[dst] = src
    nodes = dict(d.nodes)
    del nodes[anti]
    nodes[s], nodes[t] = new_src, new_dst
    div = bone(d.signature, flipped=src_node.kind == "R")
    out = Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors + (div, div))
    return cancel_divisors(out)


def _ordered_rules(rs: RuleSet):
    rules = [r for r in rs.rules if r.category in CATEGORY_ORDER]
    return sorted(rules, key=lambda r: CATEGORY_ORDER[r.category])


def simplify_step(d: Diagram, rs: RuleSet):
    """The next (diagram, rule name, site) or None at a fixpoint."""
    ordered = _ordered_rules(rs)
    if rs.collapse:
        site = _bundle_site(d, rs.collapse)
        if site is not None:
            return collapse_bundle(d, rs.collapse, site), f"collapse-bundle({rs.collapse})", f"{site[0]}->{site[1]}"
        for r in ordered:
            if r.category != "collapse":
                continue
            ms = find_matches(d, r, limit=1)
            if ms:
                return apply_rule(d, r, ms[0]), r.name, ms[0].signature()
    step = normalize_step(d)
    if step is not None:
        nd, ns = step
        return cancel_divisors(nd), ns.kind, ",".join(map(str, ns.site))
    has_hopf = any(r.category == "hopf" for r in ordered)
    for r in ordered:
        if r.category == "collapse":
            continue
        if has_hopf and r.category == "hopf":
            site = _hopf_bundle_site(d)
            if site is not None:
                return cancel_hopf_pair(d, site), "hopf-bundle", f"{site[0]}->{site[1]}"
            has_hopf = False
        ms = find_matches(d, r, limit=1)
        if ms:
            return apply_rule(d, r, ms[0]), r.name, ms[0].signature()
    return None


def simplify(d: Diagram, rs: RuleSet, max_steps: int = 200) -> SimplifyResult:
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    trace: list[TraceStep] = []
    for k in range(1, max_steps + 1):
        nxt = simplify_step(d, rs)
        if nxt is None:
            return SimplifyResult(d, trace, False)
        d, rule, site = nxt
        trace.append(TraceStep(k, rule, site, d))
    return SimplifyResult(d, trace, simplify_step(d, rs) is not None)
