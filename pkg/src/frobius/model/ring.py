"""The internal-integer ring of a model, integer matrices of Hopf-algebra diagrams, and related checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

from ..abelian import GroupElement
from ..diagram import Diagram, internal_integer_diagram
from ..linalg import Matrix, mat_tensor
from .build import GroupAlgebraModel, ModelError
from .evaluate import evaluate
from .setlike import is_phase


class HAError(ValueError):
    pass


def internal_integer_matrix(model: GroupAlgebraModel, n: int) -> Matrix:
    """The model's value of the internal integer ``n``."""
    return evaluate(internal_integer_diagram(n, model.signature), model)


def multiplication_map(model: GroupAlgebraModel, n: int) -> Matrix:
    """The permutation-like matrix |g> -> |n g>."""
    idx = model.group.index
    return _column_map(model, [idx(g * n) for g in model.elements])


def _column_map(model: GroupAlgebraModel, images: list[int]) -> Matrix:
    F = model.field
    D = len(images)
    rows = [[F.zero()] * D for _ in range(model.dim)]
    for j, i in enumerate(images):
        rows[i][j] = F.add(rows[i][j], F.one())
    return Matrix(F, model.dim, D, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class RingOps:
    sum_matrix: Matrix
    product_matrix: Matrix


def convolution(model: GroupAlgebraModel, A: Matrix, B: Matrix) -> Matrix:
    """red-mul . (A (x) B) . green-comul."""
    return model.red_mul @ mat_tensor(A, B) @ model.green_comul


def ring_ops(model: GroupAlgebraModel, a: int, b: int) -> RingOps:
    A, B = internal_integer_matrix(model, a), internal_integer_matrix(model, b)
    return RingOps(convolution(model, A, B), B @ A)


# -- integer matrices of Hopf-algebra diagrams ------------------------------------------------


def ha_to_matrix(d: Diagram, modulus: int | None = None) -> list[list[int]]:
    """Integer matrix (rows = outputs, columns = inputs) of a diagram built from
    green copying/deleting, red adding/zero, antipodes and wires.

    Each wire carries an integer row vector over the inputs: copying duplicates
    it, addition sums, the antipode negates.
    """
    order = _ha_order(d)
    k = len(d.inputs)
    vec: dict = {}
    for pos, b in enumerate(d.inputs):
        v = [0] * k
        v[pos] = 1
        vec[(b, 0)] = v
    for nid in order:
        nd = d.nodes[nid]
        if nd.kind == "B":
            continue
        ins = [vec[d.edges[(nid, p)]] for p in range(nd.m)]
        if nd.kind == "G":
            out = ins[0]
        elif nd.kind == "R":
            out = [sum(col) for col in zip(*ins)] if ins else [0] * k
        else:
            out = [-x for x in ins[0]]
        for q in range(nd.n):
            vec[(nid, nd.m + q)] = list(out)
    rows = [vec[d.edges[(b, 0)]] for b in d.outputs]
    if modulus:
        rows = [[x % modulus for x in r] for r in rows]
    return rows


def _ha_order(d: Diagram) -> list[int]:
    for nid, nd in d.nodes.items():
        if nd.kind == "G" and nd.m == 1 and nd.phase_is_zero():
            continue
        if nd.kind == "R" and nd.n == 1 and nd.phase_is_zero():
            continue
        if nd.kind in ("S", "B"):
            continue
        raise HAError(f"node {nid} ({nd.kind}({nd.m},{nd.n})) is not a Hopf-algebra generator")
    ts = TopologicalSorter({nid: set() for nid in d.nodes})
    for (dn, _), (sn, _) in d.edges.items():
        ts.add(dn, sn)
    try:
        return list(ts.static_order())
    except CycleError as exc:
        raise HAError("the diagram has a feedback loop") from exc


def integer_matrix_map(model: GroupAlgebraModel, rows: list[list[int]], inputs: int) -> Matrix:
    """Interpret an integer matrix as the map |g_1..g_k> -> |sum_j M_ij g_j>_i."""
    F = model.field
    D = model.dim
    els = model.elements
    idx = model.group.index
    zero = model.group.zero()
    R, C = D ** len(rows), D**inputs
    data = [[F.zero()] * C for _ in range(R)]
    for c in range(C):
        gs = []
        x = c
        for _ in range(inputs):
            gs.append(els[x % D])
            x //= D
        gs.reverse()
        r = 0
        for row in rows:
            acc = zero
            for coef, g in zip(row, gs):
                acc = acc + g * coef
            r = r * D + idx(acc)
        data[r][c] = F.add(data[r][c], F.one())
    return Matrix(F, R, C, tuple(tuple(r) for r in data))


# -- coprimality ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class Coprimality:
    coprime: bool
    red_comonoid_commutes: bool
    green_monoid_commutes: bool

    @property
    def consistent(self) -> bool:
        return self.coprime == self.red_comonoid_commutes == self.green_monoid_commutes


def coprimality_check(model: GroupAlgebraModel, n: int) -> Coprimality:
    """Is ``n`` invertible in the ring, and is its map a morphism of the red
    comonoid and of the green monoid?"""
    N = multiplication_map(model, n)
    NN = mat_tensor(N, N)
    red = model.red_comul @ N == NN @ model.red_comul and model.red_counit @ N == model.red_counit
    green = model.green_mul @ NN == N @ model.green_mul and N @ model.green_unit == model.green_unit
    return Coprimality(math.gcd(n, model.group.exponent()) == 1, red, green)


# -- the classical action on phases -------------------------------------------------------------


def classical_action(model: GroupAlgebraModel, k: GroupElement | int, alpha: Matrix) -> Matrix:
    """Conjugate a green phase by the classical map of ``k`` (a shift of the basis)."""
    if isinstance(k, GroupElement):
        if k.group != model.group:
            raise ModelError(f"{k} is not an element of {model.group}")
        k = model.group.index(k)
    if not 0 <= k < model.dim:
        raise ModelError(f"classical element index {k} out of range")
    if not is_phase(model, alpha, "G"):
        raise ModelError("the acted-on map is not a green phase")
    S = model.shift(k)
    return S @ alpha @ S.dagger()


__all__ = [
    "Coprimality",
    "HAError",
    "RingOps",
    "classical_action",
    "convolution",
    "coprimality_check",
    "ha_to_matrix",
    "integer_matrix_map",
    "internal_integer_matrix",
    "multiplication_map",
    "ring_ops",
]
