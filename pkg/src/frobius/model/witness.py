"""Search for a reversed factorization of a green-phase-then-red-phase composite.

Given a green phase ``g1`` followed by a red phase ``h1`` (both 1 -> 1), look
for a red-side map ``h'`` followed by a green-side map ``g'`` with
``g' . h' = h1 . g1`` exactly.  Candidates of each colour are built from
phases, internal integers composed with phases, and rank-one projectors
between that colour's unbiased points; ``depth`` bounds how many such pieces
are composed on one side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..abelian import GroupElement
from ..linalg import Matrix
from .build import GroupAlgebraModel, ModelError
from .ring import multiplication_map


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Candidate:
    label: str
    matrix: Matrix


@dataclass(frozen=True)
class Factorization:
    first: Candidate  # red side, applied first
    second: Candidate  # green side, applied second

    def describe(self) -> str:
        return f"{self.first.label} ; {self.second.label}"


def _key(M: Matrix):
    # payloads of exact fields are canonical, so the raw data identifies the matrix
    return M.shape, M.data


def _phase(model: GroupAlgebraModel, color: str, el: GroupElement) -> Matrix:
    return model.spider(color, 1, 1, el)


def _unbiased_point(model: GroupAlgebraModel, color: str, el: GroupElement) -> Matrix:
    return model.spider(color, 0, 1, el)


def basic_candidates(model: GroupAlgebraModel, color: str) -> list[Candidate]:
    """Depth-one pieces of one colour, deduplicated by matrix."""
    grp = model.signature.group_of(color)
    if not grp.finite:
        raise ModelError("the witness search needs a finite phase group")
    name = "g" if color == "G" else "r"
    phases = [(str(el), _phase(model, color, el)) for el in grp.elements()]
    out: list[Candidate] = []
    for lbl, P in phases:
        out.append(Candidate(f"{name}[{lbl}]", P))
    for n in range(model.group.exponent()):
        N = multiplication_map(model, n)
        for lbl, P in phases:
            out.append(Candidate(f"{name}[{lbl}];int({n})", N @ P))
    points = [(str(el), _unbiased_point(model, color, el)) for el in grp.elements()]
    for (la, a), (lb, b) in itertools.product(points, repeat=2):
        out.append(Candidate(f"{name}proj[{la}|{lb}]", a @ b.dagger()))
    seen: dict = {}
    for c in out:
        seen.setdefault(_key(c.matrix), c)
    return list(seen.values())


def candidates(model: GroupAlgebraModel, color: str, depth: int) -> list[Candidate]:
    base = basic_candidates(model, color)
    level = {_key(c.matrix): c for c in base}
    frontier = list(base)
    for _ in range(depth - 1):
        nxt = []
        for a in frontier:
            for b in base:
                M = b.matrix @ a.matrix
                if _key(M) not in level:
                    c = Candidate(f"{a.label};{b.label}", M)
                    level[_key(M)] = c
                    nxt.append(c)
        frontier = nxt
    return list(level.values())


def no_distributive_law_witness(
    model: GroupAlgebraModel,
    g1: GroupElement,
    h1: GroupElement,
    depth: int = 1,
    budget: int = 2_000_000,
) -> Factorization | None:
    """A reversed factorization of ``g1 ; h1`` within the candidate class, or None."""
    if model.dim > 5:
        raise ModelError("the witness search is limited to basis groups of order at most 5")
    if not model.field.exact:
        raise ModelError("the witness search needs an exact field")
    target = _phase(model, "R", h1) @ _phase(model, "G", g1)
    reds = candidates(model, "R", depth)
    greens = candidates(model, "G", depth)
    if len(reds) * len(greens) > budget:
        raise BudgetExceeded(f"{len(reds) * len(greens)} pairs exceed the budget of {budget}")
    for h in reds:
        for g in greens:
            if g.matrix @ h.matrix == target:
                return Factorization(h, g)
    return None


__all__ = ["BudgetExceeded", "Candidate", "Factorization", "basic_candidates", "candidates", "no_distributive_law_witness"]
