"""Subgraph matching and rule application."""

from __future__ import annotations

from dataclasses import dataclass

from ..diagram import Diagram
from .rules import Rule


class MatchError(ValueError):
    pass


@dataclass(frozen=True)
class Match:
    """An embedding of a rule's open left side: pattern node id -> host node id."""

    mapping: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def image(self) -> frozenset[int]:
        return frozenset(h for _, h in self.mapping)

    def signature(self) -> str:
        return ",".join(str(h) for _, h in sorted(self.mapping))


def _edge_counts(d: Diagram) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (dn, _), (sn, _) in d.edges.items():
        out[(sn, dn)] = out.get((sn, dn), 0) + 1
    return out


def _pattern_order(p: Diagram) -> list[int]:
    inner = p.interior()
    if not inner:
        return []
    adj = p.neighbours()
    order: list[int] = []
    seen: set[int] = set()
    for start in inner:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(adj[x]):
                if y not in seen and p.nodes[y].kind != "B":
                    seen.add(y)
                    queue.append(y)
    return order


def find_matches(host: Diagram, rule: Rule, limit: int | None = None) -> list[Match]:
    pattern, _ = rule.split_lhs()
    return find_pattern(host, pattern, limit)


def find_pattern(host: Diagram, pattern: Diagram, limit: int | None = None) -> list[Match]:
    for (dn, _), (sn, _) in pattern.edges.items():
        if pattern.nodes[dn].kind == "B" and pattern.nodes[sn].kind == "B":
            raise MatchError("a rule's left side may not contain bare wires")
    order = _pattern_order(pattern)
    if not order:
        return []
    pcount = _edge_counts(pattern)
    hcount = _edge_counts(host)
    by_label: dict = {}
    for i in host.interior():
        by_label.setdefault(host.nodes[i].label(), []).append(i)
    results: list[Match] = []
    seen_images: set = set()
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(p: int, h: int) -> bool:
        for q, hq in list(mapping.items()) + [(p, h)]:
            if pcount.get((p, q), 0) != hcount.get((h, hq), 0):
                return False
            if pcount.get((q, p), 0) != hcount.get((hq, h), 0):
                return False
        return True

    def rec(k: int) -> bool:
        if k == len(order):
            img = frozenset(mapping.values())
            if img not in seen_images:
                seen_images.add(img)
                results.append(Match(tuple(sorted(mapping.items()))))
            return limit is not None and len(results) >= limit
        p = order[k]
        for h in by_label.get(pattern.nodes[p].label(), ()):
            if h in used or not consistent(p, h):
                continue
            mapping[p] = h
            used.add(h)
            if rec(k + 1):
                return True
            del mapping[p]
            used.discard(h)
        return False

    rec(0)
    results.sort(key=lambda m: sorted(m.image()))
    return results


def _assign_ports(host: Diagram, pattern: Diagram, mapping: dict[int, int]):
    """Map every pattern port of a matched node to a host port.

    Spiders are commutative, so ports within one side are interchangeable;
    assignment is greedy in port order.
    """
    port_map: dict[tuple[int, int], tuple[int, int]] = {}
    for p, h in mapping.items():
        pn = pattern.nodes[p]
        # inputs grouped by source pattern node (None for boundary)
        h_groups: dict = {}
        for ip in range(pn.m):
            src = host.edges[(h, ip)][0]
            key = _pre(mapping, src)
            h_groups.setdefault(key, []).append(ip)
        for ip in range(pn.m):
            src = pattern.edges[(p, ip)][0]
            key = src if pattern.nodes[src].kind != "B" else None
            port_map[(p, ip)] = (h, h_groups[key].pop(0))
        succ_h = host.successor_map()
        succ_p = pattern.successor_map()
        o_groups: dict = {}
        for op in range(pn.m, pn.m + pn.n):
            dst = succ_h[(h, op)][0]
            o_groups.setdefault(_pre(mapping, dst), []).append(op)
        for op in range(pn.m, pn.m + pn.n):
            dst = succ_p[(p, op)][0]
            key = dst if pattern.nodes[dst].kind != "B" else None
            port_map[(p, op)] = (h, o_groups[key].pop(0))
    return port_map


def _pre(mapping: dict[int, int], host_node: int):
    for p, h in mapping.items():
        if h == host_node:
            return p
    return None


def apply_rule(host: Diagram, rule: Rule, match: Match) -> Diagram:
    pattern, closed = rule.split_lhs()
    mapping = match.as_dict()
    if set(mapping) != set(pattern.interior()):
        raise MatchError("match does not cover the rule's left side")
    for p, h in mapping.items():
        if h not in host.nodes or host.nodes[h].label() != pattern.nodes[p].label():
            raise MatchError("invalid match site")
    try:
        port_map = _assign_ports(host, pattern, mapping)
    except (KeyError, IndexError) as exc:
        raise MatchError("invalid match site") from exc
    image = set(mapping.values())
    nodes = {i: nd for i, nd in host.nodes.items() if i not in image}
    edges = {dst: src for dst, src in host.edges.items() if dst[0] not in image}
    host_succ = host.successor_map()
    # host wires at the pattern boundary
    in_src = []
    for b in pattern.inputs:
        pdst = pattern.successor_map()[(b, 0)]
        in_src.append(host.edges[port_map[pdst]])
    out_dst = []
    for b in pattern.outputs:
        psrc = pattern.edges[(b, 0)]
        out_dst.append(host_succ[port_map[psrc]])
    # insert the right side
    rhs = rule.rhs
    off = max(host.nodes, default=-1) + 1 - min(rhs.nodes, default=0)
    rin = {b: k for k, b in enumerate(rhs.inputs)}
    rout = {b: k for k, b in enumerate(rhs.outputs)}
    for i, nd in rhs.nodes.items():
        if nd.kind != "B":
            nodes[i + off] = nd
    for (dn, dp), (sn, sp) in rhs.edges.items():
        src = in_src[rin[sn]] if sn in rin else (sn + off, sp)
        dst = out_dst[rout[dn]] if dn in rout else (dn + off, dp)
        edges[dst] = src
    result = Diagram(host.signature, nodes, edges, host.inputs, host.outputs, host.divisors + rhs.divisors)
    # the left side's scalars: cancel against host scalars, else divide
    for c in closed:
        result = _remove_scalar(result, c, avoid=set())
    return cancel_divisors(result)


def _remove_scalar(d: Diagram, scalar: Diagram, avoid: set[int]) -> Diagram:
    for comp in d.closed_components():
        if comp & avoid:
            continue
        if d.subdiagram(comp).isomorphic(scalar):
            return d.without(comp)
    return d.copy(divisors=d.divisors + (scalar,))


def cancel_divisors(d: Diagram) -> Diagram:
    """Cancel each divisor against an isomorphic closed component, if any."""
    if not d.divisors:
        return d
    remaining = []
    for div in d.divisors:
        for comp in d.closed_components():
            if d.subdiagram(comp).isomorphic(div):
                d = d.without(comp)
                break
        else:
            remaining.append(div)
    return d.copy(divisors=tuple(remaining))


def strip_scalars(d: Diagram) -> Diagram:
    """Drop closed components and divisors (the scalar-free display form)."""
    closed = d.closed_components()
    ids = set().union(*closed) if closed else set()
    return d.without(ids).copy(divisors=())


__all__ = ["Match", "MatchError", "find_matches", "find_pattern", "apply_rule", "cancel_divisors", "strip_scalars"]
