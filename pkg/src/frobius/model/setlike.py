"""Set-like points, reality, unbiasedness and phases, decided by exact matrix identities."""

from __future__ import annotations

from ..abelian import characters, has_enough_characters
from ..linalg import Matrix, ShapeError, mat_tensor, rank, scalar_multiple_of
from .build import GroupAlgebraModel, ModelError


def _maps(model: GroupAlgebraModel, color: str):
    c = color[0].upper()
    if c == "G":
        return model.green_mul, model.green_unit, model.green_comul, model.green_counit
    if c == "R":
        return model.red_mul, model.red_unit, model.red_comul, model.red_counit
    raise ValueError(f"unknown colour {color!r}")


def cup(model: GroupAlgebraModel, color: str) -> Matrix:
    _, unit, comul, _ = _maps(model, color)
    return comul @ unit


def cap(model: GroupAlgebraModel, color: str) -> Matrix:
    mul, _, _, counit = _maps(model, color)
    return counit @ mul


def transpose(model: GroupAlgebraModel, M: Matrix, color: str) -> Matrix:
    """Transpose of a point (D x 1) or a 1->1 map with respect to a colour's cup and cap."""
    D = model.dim
    I = model.identity()
    if M.shape == (D, 1):
        return cap(model, color) @ mat_tensor(I, M)
    if M.shape == (D, D):
        return mat_tensor(cap(model, color), I) @ mat_tensor(mat_tensor(I, M), I) @ mat_tensor(I, cup(model, color))
    raise ShapeError(f"expected a point or a 1->1 map, got {M.shape}")


def conjugate(model: GroupAlgebraModel, M: Matrix, color: str) -> Matrix:
    return transpose(model, M, color).dagger()


def is_real(model: GroupAlgebraModel, M: Matrix, color: str) -> bool:
    return conjugate(model, M, color) == M


def is_green_real(model: GroupAlgebraModel, M: Matrix) -> bool:
    return is_real(model, M, "G")


def is_red_real(model: GroupAlgebraModel, M: Matrix) -> bool:
    return is_real(model, M, "R")


def is_unitary(model: GroupAlgebraModel, M: Matrix) -> bool:
    if M.rows != M.cols:
        return False
    I = Matrix.identity(M.field, M.rows)
    return M @ M.dagger() == I and M.dagger() @ M == I


def _point(model: GroupAlgebraModel, psi: Matrix) -> None:
    if psi.shape != (model.dim, 1):
        raise ShapeError(f"expected a point of shape ({model.dim}, 1), got {psi.shape}")


def is_unbiased(model: GroupAlgebraModel, psi: Matrix, color: str) -> bool:
    """mu(psi (x) conj(psi)) is a nonzero multiple of the unit.

    The multiple depends on how points are normalised, so it is not fixed.
    """
    _point(model, psi)
    mul, unit, _, _ = _maps(model, color)
    lhs = mul @ mat_tensor(psi, conjugate(model, psi, color))
    if lhs.is_zero():
        return False
    return _multiple(lhs, unit) is not None


def _multiple(a: Matrix, b: Matrix):
    c = scalar_multiple_of(a, b)
    return None if c is None or c.is_zero() else c


def is_green_unbiased(model: GroupAlgebraModel, psi: Matrix) -> bool:
    return is_unbiased(model, psi, "G")


def is_red_unbiased(model: GroupAlgebraModel, psi: Matrix) -> bool:
    return is_unbiased(model, psi, "R")


def is_setlike(model: GroupAlgebraModel, psi: Matrix, color: str) -> bool:
    """delta(psi) = psi (x) psi with psi nonzero."""
    _point(model, psi)
    _, _, comul, _ = _maps(model, color)
    return not psi.is_zero() and comul @ psi == mat_tensor(psi, psi)


def is_pre_phase(model: GroupAlgebraModel, M: Matrix, color: str) -> bool:
    """M acts as a strength for the multiplication: mu (M (x) 1) = M mu."""
    if M.shape != (model.dim, model.dim):
        raise ShapeError(f"expected a 1->1 map, got {M.shape}")
    mul = _maps(model, color)[0]
    return mul @ mat_tensor(M, model.identity()) == M @ mul


def is_phase(model: GroupAlgebraModel, M: Matrix, color: str) -> bool:
    return is_pre_phase(model, M, color) and is_unitary(model, M)


def set_like(model: GroupAlgebraModel, color: str) -> list[Matrix]:
    """The set-like points of one colour.

    Green: the basis vectors.  Red: one rescaled character vector per
    character of the basis group over the model's field, each confirmed by
    the defining equation.
    """
    F = model.field
    D = model.dim
    if color[0].upper() == "G":
        out = [Matrix.from_rows(F, [[1 if r == j else 0] for r in range(D)]) for j in range(D)]
    else:
        c = model.red_scale(1, 2)
        out = []
        for chi in characters(model.group, F):
            out.append(Matrix(F, D, 1, tuple((F.mul(c, chi.value(g)),) for g in model.elements)))
    for psi in out:
        if not is_setlike(model, psi, color):
            raise ModelError("a candidate set-like point fails delta(psi) = psi (x) psi")
    return out


def enough_setlike(model: GroupAlgebraModel) -> bool:
    """The red set-like points span the space; cross-checked against the character count."""
    vecs = set_like(model, "R")
    if not vecs:
        ok = model.dim == 0
    else:
        M = Matrix(model.field, model.dim, len(vecs), tuple(tuple(v.data[r][0] for v in vecs) for r in range(model.dim)))
        ok = rank(M) == model.dim
    if ok != has_enough_characters(model.group, model.field):
        raise AssertionError("span of set-like points disagrees with the character count")
    return ok


def predicates(model: GroupAlgebraModel, M: Matrix) -> dict[str, bool]:
    """Every predicate that applies to the shape of ``M``."""
    out: dict[str, bool] = {"green_real": is_green_real(model, M), "red_real": is_red_real(model, M)}
    if M.shape == (model.dim, 1):
        for col in ("G", "R"):
            name = "green" if col == "G" else "red"
            out[f"{name}_unbiased"] = is_unbiased(model, M, col)
            out[f"{name}_setlike"] = is_setlike(model, M, col)
    else:
        out["unitary"] = is_unitary(model, M)
        out["green_phase"] = is_phase(model, M, "G")
        out["red_phase"] = is_phase(model, M, "R")
    return out


__all__ = [
    "cap",
    "conjugate",
    "cup",
    "enough_setlike",
    "is_green_real",
    "is_green_unbiased",
    "is_phase",
    "is_pre_phase",
    "is_red_real",
    "is_red_unbiased",
    "is_setlike",
    "is_unbiased",
    "is_unitary",
    "predicates",
    "set_like",
    "transpose",
]
