"""Evaluate a diagram in a group-algebra model by sparse variable elimination.

Each wire carries a variable ranging over basis-element indices.  Green
spiders identify the variables on all their legs and weight them by the phase.
Red spiders are split into binary additions (plus an optional phase factor),
so a red spider of any arity costs O(D^2) per leg rather than O(D^(m+n)).
"""

from __future__ import annotations

from fractions import Fraction

from ..diagram import Diagram, DiagramError
from ..linalg import Matrix
from .build import GroupAlgebraModel, ModelError, red_scale_exponent


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def make(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Factor:
    __slots__ = ("vars", "table")

    def __init__(self, vars_: tuple, table: dict):
        self.vars = vars_
        self.table = table


def _make_factor(F, ports: list[int], entries) -> _Factor:
    """Build a factor from entries over ``ports`` (possibly repeated variables)."""
    distinct = tuple(dict.fromkeys(ports))
    pos = [distinct.index(v) for v in ports]
    table: dict = {}
    for key, val in entries:
        proj = [None] * len(distinct)
        ok = True
        for k, p in zip(key, pos):
            if proj[p] is None:
                proj[p] = k
            elif proj[p] != k:
                ok = False
                break
        if not ok:
            continue
        t = tuple(proj)
        if t in table:
            table[t] = F.add(table[t], val)
        else:
            table[t] = val
    return _Factor(distinct, {k: v for k, v in table.items() if not F.is_zero(v)})


def _multiply(F, a: _Factor, b: _Factor) -> _Factor:
    one = F.one()
    shared = [v for v in a.vars if v in b.vars]
    out_vars = a.vars + tuple(v for v in b.vars if v not in a.vars)
    ia = [a.vars.index(v) for v in shared]
    ib = [b.vars.index(v) for v in shared]
    extra = [b.vars.index(v) for v in b.vars if v not in a.vars]
    index: dict = {}
    for kb, vb in b.table.items():
        index.setdefault(tuple(kb[i] for i in ib), []).append((tuple(kb[i] for i in extra), vb))
    table = {}
    mul = F.mul
    for ka, va in a.table.items():
        for ext, vb in index.get(tuple(ka[i] for i in ia), ()):
            if va == one:
                v = vb
            elif vb == one:
                v = va
            else:
                v = mul(va, vb)
            table[ka + ext] = v
    return _Factor(out_vars, table)


def _sum_out(F, f: _Factor, var: int) -> _Factor:
    i = f.vars.index(var)
    out_vars = f.vars[:i] + f.vars[i + 1 :]
    table: dict = {}
    add = F.add
    for k, v in f.table.items():
        t = k[:i] + k[i + 1 :]
        table[t] = add(table[t], v) if t in table else v
    return _Factor(out_vars, {k: v for k, v in table.items() if not F.is_zero(v)})


class _Network:
    def __init__(self, model: GroupAlgebraModel):
        self.model = model
        self.F = model.field
        self.uf = _UnionFind()
        self.counter = 0
        self.pending: list[tuple[list[int], object]] = []  # (ports, entry generator factory)
        self.scale = Fraction(0)
        self.scalars: list = []

    def fresh(self) -> int:
        v = self.counter
        self.counter += 1
        self.uf.make(v)
        return v

    def add_factor(self, ports: list[int], entries_fn) -> None:
        self.pending.append((ports, entries_fn))

    def addition(self, a: int, b: int, c: int) -> None:
        """Factor enforcing ``c = a + b``."""
        add = self.model.add_table
        one = self.F.one()
        D = self.model.dim
        self.add_factor([a, b, c], lambda: (((x, y, add[x][y]), one) for x in range(D) for y in range(D)))

    def fixed(self, v: int, value: int) -> None:
        one = self.F.one()
        self.add_factor([v], lambda: [((value,), one)])


def evaluate(d: Diagram, model: GroupAlgebraModel) -> Matrix:
    """The matrix of ``d``: rows index outputs, columns index inputs (row-major)."""
    F = model.field
    D = model.dim
    net = _Network(model)
    # one variable per wire, keyed by its destination port
    wire_var: dict = {}
    for dst in d.edges:
        wire_var[dst] = net.fresh()
    src_var = {src: wire_var[dst] for dst, src in d.edges.items()}

    def port_var(nid: int, p: int) -> int:
        nd = d.nodes[nid]
        return wire_var[(nid, p)] if p < nd.m else src_var[(nid, p)]

    green_nodes = []
    for nid in sorted(d.nodes):
        nd = d.nodes[nid]
        if nd.kind == "G":
            ports = [port_var(nid, p) for p in range(nd.m + nd.n)]
            if not ports:
                ports = [net.fresh()]
            for v in ports[1:]:
                net.uf.union(ports[0], v)
            green_nodes.append((nd, ports[0]))
        elif nd.kind == "R" and nd.m == nd.n == 1 and nd.phase_is_zero():
            net.uf.union(port_var(nid, 0), port_var(nid, 1))
            net.scale += red_scale_exponent(model.norm, nd.m, nd.n)
    for nd, v in green_nodes:
        if not nd.phase_is_zero():
            diag = model.green_phase(nd.phase)
            net.add_factor([v], lambda diag=diag: (((j,), diag[j]) for j in range(D)))
    for nid in sorted(d.nodes):
        nd = d.nodes[nid]
        if nd.kind == "S":
            neg = model.neg_table
            one = F.one()
            net.add_factor([port_var(nid, 0), port_var(nid, 1)], lambda neg=neg, one=one: (((j, neg[j]), one) for j in range(D)))
        elif nd.kind == "R":
            if nd.m == nd.n == 1 and nd.phase_is_zero():
                continue
            _red_spider(net, nd, [port_var(nid, p) for p in range(nd.m)], [port_var(nid, nd.m + q) for q in range(nd.n)])
        elif nd.kind == "B":
            continue
        elif nd.kind != "G":
            raise DiagramError(f"unknown node kind {nd.kind}")
    in_vars = [net.uf.find(src_var[(b, 0)]) for b in d.inputs]
    out_vars = [net.uf.find(wire_var[(b, 0)]) for b in d.outputs]
    result = _contract(net, set(in_vars) | set(out_vars))
    scale = model.scale_power(net.scale) if net.scale else None
    for div in d.divisors:
        dm = evaluate(div, model)
        val = dm.data[0][0]
        if F.is_zero(val):
            raise ModelError("division by a diagram that evaluates to zero")
        inv = F.inv(val)
        scale = inv if scale is None else F.mul(scale, inv)
    rows, cols = D ** len(out_vars), D ** len(in_vars)
    z = F.zero()
    data = [[z] * cols for _ in range(rows)]
    pos = {v: i for i, v in enumerate(result.vars)}
    for key, val in result.table.items():
        r = 0
        for v in out_vars:
            r = r * D + key[pos[v]]
        c = 0
        for v in in_vars:
            c = c * D + key[pos[v]]
        if scale is not None:
            val = F.mul(scale, val)
        data[r][c] = F.add(data[r][c], val)
    return Matrix(F, rows, cols, tuple(tuple(r) for r in data))


def _red_spider(net: _Network, nd, ins: list[int], outs: list[int]) -> None:
    model = net.model
    D = model.dim
    F = net.F
    net.scale += red_scale_exponent(model.norm, nd.m, nd.n)
    # sum of the inputs
    if not ins:
        s = net.fresh()
        net.fixed(s, 0)
    else:
        s = ins[0]
        for v in ins[1:]:
            nxt = net.fresh()
            net.addition(s, v, nxt)
            s = nxt
    # phase
    kind, data = model.red_phase(nd.phase)
    if kind == "shift" and data == 0:
        t = s
    else:
        t = net.fresh()
        if kind == "shift":
            add = model.add_table
            one = F.one()
            net.add_factor([s, t], lambda k=data: (((j, add[j][k]), one) for j in range(D)))
        else:
            rows = data
            net.add_factor([s, t], lambda rows=rows: (((j, i), rows[i][j]) for j in range(D) for i in range(D) if not F.is_zero(rows[i][j])))
    # split the result over the outputs
    if not outs:
        net.fixed(t, 0)
    elif len(outs) == 1:
        # the single output carries t: identify by an equality factor
        one = F.one()
        net.add_factor([t, outs[0]], lambda: (((j, j), one) for j in range(D)))
    else:
        acc = outs[-1]
        for v in reversed(outs[1:-1]):
            nxt = net.fresh()
            net.addition(v, acc, nxt)
            acc = nxt
        net.addition(outs[0], acc, t)


def _contract(net: _Network, open_vars: set[int]) -> _Factor:
    F = net.F
    D = net.model.dim
    find = net.uf.find
    factors: list[_Factor] = []
    for ports, fn in net.pending:
        factors.append(_make_factor(F, [find(v) for v in ports], fn()))
    all_vars = set()
    for f in factors:
        all_vars.update(f.vars)
    one = F.one()
    for v in sorted(open_vars - all_vars):
        factors.append(_Factor((v,), {(j,): one for j in range(D)}))
    # green weights may be the only factor on a closed variable; free variables
    # that no factor mentions contribute a factor of D each
    used = set(all_vars) | open_vars
    free = 0
    for v in set(find(x) for x in net.uf.parent):
        if v not in used:
            free += 1
    scalar = F.from_int(D**free) if free else one
    elim = sorted(all_vars - open_vars)
    while elim:
        best = None
        for v in elim:
            involved = [f for f in factors if v in f.vars]
            width = len(set().union(*(f.vars for f in involved)))
            cost = (width, sum(len(f.table) for f in involved), v)
            if best is None or cost < best[0]:
                best = (cost, v, involved)
        _, v, involved = best
        elim.remove(v)
        prod = involved[0]
        for f in involved[1:]:
            prod = _multiply(F, prod, f)
        rest = [f for f in factors if not any(f is g for g in involved)]
        rest.append(_sum_out(F, prod, v))
        factors = rest
    result = _Factor((), {(): scalar})
    # multiply smallest first
    factors.sort(key=lambda f: (len(f.vars), len(f.table)))
    for f in factors:
        result = _multiply(F, result, f)
    return result
