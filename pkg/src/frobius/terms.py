"""The term language.

    term ::= g(m,n[,phase]) | r(m,n[,phase]) | s | id | swap | empty | int(k)
           | comp(term, term, ...) | tens(term, term, ...) | frac(term, closed-term)

``comp(a, b)`` is ``a`` followed by ``b``.  ``frac(t, c)`` divides ``t`` by the
closed diagram ``c``.  Phases are group-element literals such as ``0``, ``3``,
``(1,2)`` or ``1/4``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import GroupError
from .diagram import (
    ANTIPODE,
    Diagram,
    DiagramError,
    Node,
    TheorySignature,
    antipode,
    d_compose,
    d_tensor,
    empty,
    identity,
    internal_integer_diagram,
    spider,
    swap,
)


class TermSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.pos = pos
        self.line = line
        self.column = col


class _Parser:
    def __init__(self, text: str, sig: TheorySignature):
        self.text = text
        self.pos = 0
        self.sig = sig

    def error(self, msg: str):
        raise TermSyntaxError(msg, self.pos, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos : self.pos + 1]

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.error("expected a term")
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start : self.pos])
        except ValueError:
            self.pos = start
            self.error("expected an integer")

    def phase_literal(self) -> str:
        self.ws()
        start = self.pos
        if self.peek() == "(":
            depth = 0
            while self.pos < len(self.text):
                c = self.text[self.pos]
                self.pos += 1
                if c == "(":
                    depth += 1
                elif c == ")":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                self.error("unterminated phase tuple")
        else:
            while self.pos < len(self.text) and self.text[self.pos] not in ",)":
                self.pos += 1
        lit = self.text[start : self.pos].strip()
        if not lit:
            self.pos = start
            self.error("expected a phase")
        return lit

    def term(self) -> Diagram:
        start = self.pos
        name = self.ident()
        try:
            return self._term(name)
        except (DiagramError, GroupError) as exc:
            if isinstance(exc, TermSyntaxError):
                raise
            self.pos = start
            self.ws()
            self.error(str(exc))

    def _term(self, name: str) -> Diagram:
        sig = self.sig
        if name in ("g", "r"):
            self.expect("(")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            if m < 0 or n < 0:
                self.error("arities must be non-negative")
            grp = sig.green if name == "g" else sig.red
            phase = grp.zero()
            if self.peek() == ",":
                self.pos += 1
                lit_pos = self.pos
                lit = self.phase_literal()
                try:
                    phase = grp.parse_element(lit)
                except GroupError as exc:
                    self.pos = lit_pos
                    self.ws()
                    self.error(str(exc))
            self.expect(")")
            return spider(name, m, n, phase, sig)
        if name == "s":
            return antipode(sig)
        if name == "id":
            return identity(1, sig)
        if name == "swap":
            return swap(sig)
        if name == "empty":
            return empty(sig)
        if name == "int":
            self.expect("(")
            k = self.integer()
            self.expect(")")
            return internal_integer_diagram(k, sig)
        if name in ("comp", "tens", "frac"):
            self.expect("(")
            args = [self.term()]
            arg_pos = []
            while self.peek() == ",":
                self.pos += 1
                self.ws()
                arg_pos.append(self.pos)
                args.append(self.term())
            self.expect(")")
            if name == "frac":
                if len(args) != 2:
                    self.error("frac takes two arguments")
                if args[1].arity != (0, 0):
                    self.pos = arg_pos[0]
                    self.error("the divisor of frac must be a closed term")
                div = args[1]
                parts = tuple(div.subdiagram(c) for c in div.closed_components()) + div.divisors
                return args[0].copy(divisors=args[0].divisors + parts)
            out = args[0]
            for k, a in enumerate(args[1:]):
                if name == "comp":
                    if out.arity[1] != a.arity[0]:
                        self.pos = arg_pos[k]
                        self.error(f"arity mismatch: {out.arity[1]} outputs feed {a.arity[0]} inputs")
                    out = d_compose(out, a)
                else:
                    out = d_tensor(out, a)
            return out
        self.error(f"unknown generator {name!r}")


def parse_term(text: str, signature: TheorySignature | None = None) -> Diagram:
    p = _Parser(text, signature or TheorySignature())
    d = p.term()
    p.ws()
    if p.pos != len(text):
        p.error("trailing input")
    return d


# ------------------------------------------------------------------------------------------
# printing


@dataclass(frozen=True)
class _T:
    text: str
    m: int
    n: int
    is_id: bool = False


def _id(k: int) -> _T:
    if k == 0:
        return _T("empty", 0, 0, True)
    t = _T("id", 1, 1, True)
    for _ in range(k - 1):
        t = _T(f"tens({t.text}, id)", t.m + 1, t.n + 1, True)
    return t


def _tens(a: _T, b: _T) -> _T:
    if a.m == a.n == 0 and a.is_id:
        return b
    if b.m == b.n == 0 and b.is_id:
        return a
    if a.is_id and b.is_id:
        return _id(a.m + b.m)
    return _T(f"tens({a.text}, {b.text})", a.m + b.m, a.n + b.n)


def _comp(a: _T, b: _T) -> _T:
    if a.is_id:
        return b
    if b.is_id:
        return a
    return _T(f"comp({a.text}, {b.text})", a.m, b.n)


def _layer(k: int, gen: _T, rest: int) -> _T:
    return _tens(_tens(_id(k), gen), _id(rest))


def _permute(wires: list, target: list) -> _T:
    """Adjacent swaps turning the order ``wires`` into ``target`` (same elements)."""
    cur = list(wires)
    n = len(cur)
    term = _id(n)
    sw = _T("swap", 2, 2)
    for i, w in enumerate(target):
        j = cur.index(w, i)
        while j > i:
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            term = _comp(term, _layer(j - 1, sw, n - j - 1))
            j -= 1
    return term


def _node_text(nd: Node) -> str:
    if nd.kind == "S":
        return "s"
    return f"{'g' if nd.kind == 'G' else 'r'}({nd.m},{nd.n},{nd.phase})"


def _break_cycles(d: Diagram) -> Diagram:
    """Replace feedback wires by a green cap/cup snake so that the graph is acyclic."""
    interior = d.interior()
    preds: dict[int, set] = {i: set() for i in d.nodes}
    for (dn, _), (sn, _) in d.edges.items():
        preds[dn].add(sn)
    placed = set(d.inputs)
    remaining = set(interior)
    feedback: set = set()
    while remaining:
        ready = sorted(i for i in remaining if preds[i] <= placed)
        if not ready:
            stuck = min(remaining)
            for p in range(d.nodes[stuck].m):
                src = d.edges[(stuck, p)]
                if src[0] not in placed:
                    feedback.add((stuck, p))
            preds[stuck] = {d.edges[(stuck, p)][0] for p in range(d.nodes[stuck].m) if (stuck, p) not in feedback}
            continue
        for i in ready:
            placed.add(i)
            remaining.discard(i)
    if not feedback:
        return d
    nodes = dict(d.nodes)
    edges = dict(d.edges)
    nxt = d.next_id()
    zero = d.signature.green.zero()
    for dst in sorted(feedback):
        src = edges[dst]
        cap, cup = nxt, nxt + 1
        nxt += 2
        nodes[cap] = Node("G", 2, 0, zero)
        nodes[cup] = Node("G", 0, 2, zero)
        edges[(cap, 0)] = src
        edges[(cap, 1)] = (cup, 1)
        edges[dst] = (cup, 0)
    return Diagram(d.signature, nodes, edges, d.inputs, d.outputs, d.divisors)


def _print_open(d: Diagram) -> _T:
    d = _break_cycles(d)
    wires: list = [(i, 0) for i in d.inputs]  # open output ports, in order
    term = _id(len(wires))
    remaining = set(d.interior())
    while remaining:
        avail = set(wires)
        ready = [
            i
            for i in sorted(remaining)
            if all(d.edges[(i, p)] in avail for p in range(d.nodes[i].m))
        ]
        i = ready[0]
        nd = d.nodes[i]
        feeds = [d.edges[(i, p)] for p in range(nd.m)]
        others = [w for w in wires if w not in feeds]
        # keep the untouched wires in place as far as possible: put the node's inputs
        # where its first input currently sits
        first = min((wires.index(f) for f in feeds), default=len(wires))
        k = sum(1 for w in wires[:first] if w not in feeds) if feeds else 0
        if not feeds:
            # a source node: place it after the wires feeding the lowest output it reaches
            k = len(others)
        target = others[:k] + feeds + others[k:]
        term = _comp(term, _permute(wires, target))
        gen = _T(_node_text(nd), nd.m, nd.n)
        term = _comp(term, _layer(k, gen, len(others) - k))
        outs = [(i, nd.m + q) for q in range(nd.n)]
        wires = others[:k] + outs + others[k:]
        remaining.discard(i)
    final = [d.edges[(o, 0)] for o in d.outputs]
    term = _comp(term, _permute(wires, final))
    return term


def print_term(d: Diagram) -> str:
    t = _print_open(d.copy(divisors=()))
    if not d.divisors:
        return t.text
    below = d.divisors[0]
    for div in d.divisors[1:]:
        from .diagram import d_tensor

        below = d_tensor(below, div)
    return f"frac({t.text}, {print_term(below)})"


__all__ = ["parse_term", "print_term", "TermSyntaxError", "ANTIPODE"]
