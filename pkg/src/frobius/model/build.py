"""Group-algebra models kG with a choice of normalisation."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..abelian import AbelianGroup, GroupElement, MaschkeViolation
from ..diagram import Node, TheorySignature, from_node
from ..field import (
    ComplexFloats,
    Cyclotomic,
    Field,
    FieldError,
    NoRootOfUnity,
    NoSquareRoot,
    parse_field,
    sqrt_conductor,
)
from ..linalg import Matrix


class ModelError(ValueError):
    pass


class Normalization(enum.Enum):
    INTEGRAL = "integral"
    MASCHKE = "maschke"
    UNITARY = "unitary"

    @classmethod
    def parse(cls, text: str) -> Normalization:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ModelError(f"unknown normalization {text!r}") from None


def red_scale_exponent(norm: Normalization, m: int, n: int) -> Fraction:
    """The red m -> n spider is ``D**e`` times its integral form."""
    if norm is Normalization.INTEGRAL:
        return Fraction(0)
    if norm is Normalization.MASCHKE:
        return Fraction(1 - n)
    return Fraction(2 - m - n, 2)


@dataclass(frozen=True, eq=False)
class GroupAlgebraModel:
    group: AbelianGroup
    field: Field
    norm: Normalization
    signature: TheorySignature
    sqrt_d: object = None  # payload of a square root of D, when available
    _cache: dict = field(default_factory=dict, repr=False)

    # -- basic data ----------------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.group.order()

    @cached_property
    def elements(self) -> list[GroupElement]:
        return self.group.elements()

    @cached_property
    def add_table(self) -> list[list[int]]:
        idx = self.group.index
        els = self.elements
        return [[idx(a + b) for b in els] for a in els]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.group.index(-a) for a in self.elements]

    def __str__(self) -> str:
        return f"{self.group}@{self.field}/{self.norm.value}"

    def scale_power(self, e: Fraction):
        """Payload of ``D**e`` for a half-integer ``e``."""
        F = self.field
        e = Fraction(e)
        if e.denominator == 1:
            return F.from_fraction(Fraction(self.dim) ** int(e))
        if e.denominator != 2:
            raise ModelError(f"unsupported scale exponent {e}")
        if self.sqrt_d is None:
            raise ModelError(f"sqrt({self.dim}) is unavailable in {F}")
        return F.pow(self.sqrt_d, int(2 * e))

    def red_scale(self, m: int, n: int):
        key = ("scale", m, n)
        if key not in self._cache:
            self._cache[key] = self.scale_power(red_scale_exponent(self.norm, m, n))
        return self._cache[key]

    # -- phases --------------------------------------------------------------------------------
    def _angle(self, phase: GroupElement) -> Fraction | None:
        g = phase.group
        if g.circle:
            return phase.coords[0]
        if len(g.factors) == 1:
            return Fraction(phase.coords[0], g.factors[0])
        return None

    def _root(self, n: int):
        try:
            return self.field.zeta(n)
        except NoRootOfUnity as exc:
            raise ModelError(f"{self} cannot represent a phase needing {n}-th roots of unity") from exc

    def pairing(self, a: int, b: int):
        """chi_a(b): the standard pairing of two basis elements (indices)."""
        F = self.field
        out = F.one()
        for x, y, n in zip(self.elements[a].coords, self.elements[b].coords, self.group.factors):
            if x * y % n:
                out = F.mul(out, F.pow(self._root(n), x * y % n))
        return out

    def green_phase(self, phase: GroupElement) -> list:
        """Diagonal entries of a green phase."""
        key = ("gphase", phase)
        if key in self._cache:
            return self._cache[key]
        F = self.field
        if phase.is_zero():
            diag = [F.one()] * self.dim
        elif phase.group == self.group:
            p = self.group.index(phase)
            diag = [self.pairing(p, j) for j in range(self.dim)]
        else:
            theta = self._angle(phase)
            if theta is None:
                raise ModelError(f"phase {phase!r} cannot be interpreted in {self}")
            w = self._root(theta.denominator)
            diag = [F.pow(w, theta.numerator * sum(e.coords) % theta.denominator) for e in self.elements]
        self._cache[key] = diag
        return diag

    def red_phase(self, phase: GroupElement):
        """Either ``("shift", k)`` for the basis shift by element index ``k``, or ``("dense", rows)``."""
        key = ("rphase", phase)
        if key in self._cache:
            return self._cache[key]
        if phase.is_zero():
            out = ("shift", 0)
        elif phase.group == self.group:
            out = ("shift", self.group.index(phase))
        else:
            theta = self._angle(phase)
            if theta is None:
                raise ModelError(f"phase {phase!r} cannot be interpreted in {self}")
            if self.group.canonical().factors == (self.dim,) and (theta * self.dim).denominator == 1 and len(self.group.factors) == 1:
                out = ("shift", int(theta * self.dim) % self.dim)
            else:
                out = ("dense", self._fourier_conjugate(theta))
        self._cache[key] = out
        return out

    def _fourier_conjugate(self, theta: Fraction) -> list[list]:
        # R[a][b] = (1/D) sum_n chi_n(a - b) * exp(-2 pi i theta s(n))
        F = self.field
        D = self.dim
        w = self._root(theta.denominator)
        lam = [F.pow(w, -theta.numerator * sum(e.coords)) for e in self.elements]
        inv_d = F.from_fraction(Fraction(1, D))
        rows = []
        for a in range(D):
            row = []
            for b in range(D):
                diff = self.add_table[a][self.neg_table[b]]
                acc = F.zero()
                for n in range(D):
                    acc = F.add(acc, F.mul(self.pairing(n, diff), lam[n]))
                row.append(F.mul(acc, inv_d))
            rows.append(row)
        return rows

    def supports(self, phase: GroupElement, kind: str) -> bool:
        try:
            if kind == "G":
                self.green_phase(phase)
            else:
                self.red_phase(phase)
            return True
        except ModelError:
            return False

    # -- structure maps ------------------------------------------------------------------------
    def node_matrix(self, node: Node) -> Matrix:
        from .evaluate import evaluate

        sig = self.signature
        if node.phase is not None and node.phase.group != sig.group_of(node.kind):
            sig = TheorySignature(node.phase.group, node.phase.group)
        return evaluate(from_node(node, sig), self)

    def spider(self, kind: str, m: int, n: int, phase: GroupElement | None = None) -> Matrix:
        grp = self.signature.group_of(kind)
        return self.node_matrix(Node(kind, m, n, phase if phase is not None else grp.zero()))

    @cached_property
    def green_mul(self) -> Matrix:
        return self.spider("G", 2, 1)

    @cached_property
    def green_unit(self) -> Matrix:
        return self.spider("G", 0, 1)

    @cached_property
    def green_comul(self) -> Matrix:
        return self.spider("G", 1, 2)

    @cached_property
    def green_counit(self) -> Matrix:
        return self.spider("G", 1, 0)

    @cached_property
    def red_mul(self) -> Matrix:
        return self.spider("R", 2, 1)

    @cached_property
    def red_unit(self) -> Matrix:
        return self.spider("R", 0, 1)

    @cached_property
    def red_comul(self) -> Matrix:
        return self.spider("R", 1, 2)

    @cached_property
    def red_counit(self) -> Matrix:
        return self.spider("R", 1, 0)

    @cached_property
    def antipode(self) -> Matrix:
        return Matrix.permutation(self.field, self.neg_table)

    def identity(self, wires: int = 1) -> Matrix:
        return Matrix.identity(self.field, self.dim**wires)

    def shift(self, k: int) -> Matrix:
        return Matrix.permutation(self.field, [self.add_table[j][k] for j in range(self.dim)])

    def scalar(self, e: Fraction) -> Matrix:
        return Matrix.scalar(self.field, self.scale_power(e))

    # -- verification --------------------------------------------------------------------------
    def verify(self) -> None:
        """Check the defining invariants of the structure maps."""
        F = self.field
        D = self.dim
        one, zero = F.one(), F.zero()
        for j in range(D):
            col = [self.green_comul.data[r][j] for r in range(D * D)]
            for r, v in enumerate(col):
                if not F.eq(v, one if r == j * D + j else zero):
                    raise ModelError("green comultiplication does not copy the basis")
        c = self.red_scale(2, 1)
        for a in range(D):
            for b in range(D):
                for r in range(D):
                    v = self.red_mul.data[r][a * D + b]
                    if not F.eq(v, c if r == self.add_table[a][b] else zero):
                        raise ModelError("red multiplication is not the group law")
        if self.red_comul != self.red_mul.dagger() and self.norm is not Normalization.MASCHKE:
            raise ModelError("red comultiplication is not the adjoint of the multiplication")
        if self.norm is Normalization.UNITARY:
            for mul, comul in ((self.green_mul, self.green_comul), (self.red_mul, self.red_comul)):
                if mul @ comul != self.identity():
                    raise ModelError("a Frobenius algebra is not special")


def _default_field(group: AbelianGroup) -> Field:
    return Cyclotomic(group.exponent() if group.order() > 1 else 1)


def build_model(
    group: AbelianGroup,
    fld: Field | None = None,
    norm: Normalization = Normalization.UNITARY,
    signature: TheorySignature | None = None,
    verify: bool = True,
) -> GroupAlgebraModel:
    if group.circle:
        raise ModelError("the basis group must be finite")
    fld = fld if fld is not None else _default_field(group)
    D = group.order()
    if fld.characteristic and D % fld.characteristic == 0:
        raise MaschkeViolation(f"characteristic {fld.characteristic} divides |{group}| = {D}")
    sqrt_d = None
    try:
        sqrt_d = fld.sqrt(D)
    except NoSquareRoot:
        if norm is Normalization.UNITARY:
            if isinstance(fld, Cyclotomic):
                fld = Cyclotomic(math.lcm(fld.order, sqrt_conductor(D)))
                sqrt_d = fld.sqrt(D)
            else:
                raise ModelError(f"unitary normalization needs sqrt({D}), which {fld} lacks") from None
    if isinstance(fld, ComplexFloats):
        sqrt_d = complex(math.sqrt(D))
    sig = signature or TheorySignature.standard(group)
    model = GroupAlgebraModel(group, fld, norm, sig, sqrt_d)
    if verify:
        model.verify()
    return model


_DESC_RE = re.compile(r"^(?P<group>[^@/]+)(?:@(?P<field>[^/]+))?(?:/(?P<norm>\w+))?$")


def parse_model(text: str, signature: TheorySignature | None = None) -> GroupAlgebraModel:
    """Parse a descriptor such as ``Z3@cyclo(12)/unitary``."""
    m = _DESC_RE.match(text.strip())
    if not m:
        raise ModelError(f"bad model descriptor {text!r}")
    group = AbelianGroup.parse(m.group("group"))
    try:
        fld = parse_field(m.group("field")) if m.group("field") else None
    except FieldError as exc:
        raise ModelError(str(exc)) from exc
    norm = Normalization.parse(m.group("norm")) if m.group("norm") else Normalization.UNITARY
    return build_model(group, fld, norm, signature)
