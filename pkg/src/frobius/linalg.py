"""Dense matrices over a field: composition, Kronecker product, dagger, rank."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import Field, FieldError, Scalar


class ShapeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    rows: int
    cols: int
    data: tuple  # tuple of row tuples of payloads

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = tuple(tuple(_entry(field, x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, field: Field, perm: Sequence[int]) -> Matrix:
        """The matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        z, o = field.zero(), field.one()
        rows = [[z] * n for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = o
        return cls(field, n, n, tuple(tuple(r) for r in rows))

    @classmethod
    def scalar(cls, field: Field, value) -> Matrix:
        return cls(field, 1, 1, ((value,),))

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.data[i][j])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        eq = self.field.eq
        return all(eq(a, b) for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb))

    __hash__ = None  # type: ignore[assignment]

    def scale(self, c) -> Matrix:
        F = self.field
        c = c.value if isinstance(c, Scalar) else c
        return Matrix(F, self.rows, self.cols, tuple(tuple(F.mul(c, x) for x in r) for r in self.data))

    def add(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def conj(self) -> Matrix:
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(tuple(F.conj(x) for x in r) for r in self.data))

    def dagger(self) -> Matrix:
        return mat_dagger(self)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for r in self.data for x in r)

    def to_complex(self) -> list[list[complex]]:
        return [[self.field.to_complex(x) for x in r] for r in self.data]

    def dump(self) -> str:
        """Machine-readable dump: shape line then one entry per line, row-major."""
        lines = [f"matrix {self.field} {self.rows} {self.cols}"]
        lines += [self.field.format(x) for r in self.data for x in r]
        return "\n".join(lines)

    def pretty(self) -> str:
        cells = [[self.field.format(x) for x in r] for r in self.data]
        if not cells or not self.cols:
            return f"[{self.rows}x{self.cols} matrix]"
        widths = [max(len(c[j]) for c in cells) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c[j].rjust(widths[j]) for j in range(self.cols)) + " ]" for c in cells)

    def __str__(self) -> str:
        return self.pretty()


def _entry(field: Field, x):
    # ints, Fractions and Scalars are coerced; anything else is taken as a raw payload
    if isinstance(x, (Scalar, int, Fraction)):
        return field.coerce(x)
    return x


def parse_dump(text: str, field: Field) -> Matrix:
    from .field import parse_scalar

    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "matrix":
        raise ValueError("not a matrix dump")
    r, c = int(head[2]), int(head[3])
    vals = [parse_scalar(ln, field).value for ln in lines[1:]]
    if len(vals) != r * c:
        raise ShapeError("dump length mismatch")
    return Matrix(field, r, c, tuple(tuple(vals[i * c : (i + 1) * c]) for i in range(r)))


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldError(f"descriptor mismatch: {a.field} vs {b.field}")


def mat_compose(A: Matrix, B: Matrix) -> Matrix:
    _same_field(A, B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot compose {A.shape} with {B.shape}")
    F = A.field
    add, mul, iz = F.add, F.mul, F.is_zero
    z = F.zero()
    out = []
    for ra in A.data:
        acc = [z] * B.cols
        for k, a in enumerate(ra):
            if iz(a):
                continue
            rb = B.data[k]
            for j, b in enumerate(rb):
                if not iz(b):
                    acc[j] = add(acc[j], mul(a, b))
        out.append(tuple(acc))
    return Matrix(F, A.rows, B.cols, tuple(out))


def mat_tensor(A: Matrix, B: Matrix) -> Matrix:
    _same_field(A, B)
    F = A.field
    mul = F.mul
    out = []
    for ra in A.data:
        for rb in B.data:
            out.append(tuple(mul(a, b) for a in ra for b in rb))
    return Matrix(F, A.rows * B.rows, A.cols * B.cols, tuple(out))


def mat_dagger(A: Matrix) -> Matrix:
    return A.transpose().conj()


def rank(A: Matrix) -> int:
    F = A.field
    if not F.exact:
        raise FieldError("exact rank unavailable for complex floats")
    rows = [list(r) for r in A.data]
    r = 0
    for c in range(A.cols):
        piv = next((i for i in range(r, len(rows)) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def scalar_multiple_of(A: Matrix, B: Matrix) -> Scalar | None:
    """``c`` with ``A == c*B``, or None.  Two zero matrices give 1."""
    _same_field(A, B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    F = A.field
    c = None
    for ra, rb in zip(A.data, B.data):
        for a, b in zip(ra, rb):
            if F.is_zero(b):
                if not F.is_zero(a):
                    return None
                continue
            if c is None:
                c = F.div(a, b)
    if c is None:
        return Scalar(F, F.one()) if A.is_zero() else None
    if A == B.scale(c):
        return Scalar(F, c)
    return None


def basis_vector(field: Field, dim: int, i: int) -> Matrix:
    z, o = field.zero(), field.one()
    return Matrix(field, dim, 1, tuple((o if k == i else z,) for k in range(dim)))
