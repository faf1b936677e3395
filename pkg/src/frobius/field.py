"""Exact scalar fields: rationals, cyclotomic fields, prime fields, and complex floats.

Every field works on raw *payloads* (``Fraction``, ``(coeffs, den)`` tuples,
``int`` residues, ``complex``) so that the matrix and tensor code can run its
inner loops without wrapper objects.  :class:`Scalar` wraps a payload with its
field for user-facing arithmetic.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable


class FieldError(ValueError):
    """Raised for descriptor mismatches and malformed literals."""


class NoRootOfUnity(FieldError):
    pass


class NoSquareRoot(FieldError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def squarefree_part(n: int) -> tuple[int, int]:
    """Write ``n = s*s*m`` with ``m`` squarefree; return ``(s, m)``."""
    s, m = 1, 1
    for p, e in _factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def sqrt_conductor(n: int) -> int:
    """Smallest cyclotomic order whose field contains ``sqrt(n)``."""
    _, m = squarefree_part(n)
    if m == 1:
        return 1
    return m if m % 4 == 1 else 4 * m


class Field:
    """Base class of field descriptors.  Subclasses are frozen dataclasses."""

    exact = True
    characteristic = 0

    # -- payload arithmetic (overridden) ------------------------------------------------
    def zero(self) -> Any: ...
    def one(self) -> Any: ...
    def add(self, a, b): ...
    def neg(self, a): ...
    def mul(self, a, b): ...
    def inv(self, a): ...
    def conj(self, a): ...
    def is_zero(self, a) -> bool: ...
    def from_fraction(self, q: Fraction): ...
    def to_complex(self, a) -> complex: ...
    def format(self, a) -> str: ...
    def roots_of_unity(self, n: int) -> list: ...
    def sqrt(self, n: int): ...

    # -- derived -------------------------------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.one()
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def from_int(self, k: int):
        return self.from_fraction(Fraction(k))

    def coerce(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"scalar from {x.field} used in {self}")
            return x.value
        if isinstance(x, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(Fraction(x))
        raise FieldError(f"cannot coerce {x!r} into {self}")

    def zeta(self, n: int):
        """A fixed primitive ``n``-th root of unity (payload)."""
        roots = self.roots_of_unity(n)
        if len(roots) < n:
            raise NoRootOfUnity(f"{self} has no primitive {n}-th root of unity")
        return roots[1 % n] if n > 1 else self.one()

    def __call__(self, x) -> Scalar:
        return Scalar(self, self.coerce(x))


@dataclass(frozen=True)
class Rationals(Field):
    def __str__(self) -> str:
        return "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def conj(self, a):
        return a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def from_fraction(self, q):
        return Fraction(q)

    def to_complex(self, a):
        return complex(a)

    def format(self, a):
        return str(a)

    def roots_of_unity(self, n):
        return [Fraction(1), Fraction(-1)] if n % 2 == 0 else [Fraction(1)]

    def sqrt(self, n):
        q = Fraction(n)
        if q < 0:
            raise NoSquareRoot(f"{n} has no square root in {self}")
        a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if a * a != q.numerator or b * b != q.denominator:
            raise NoSquareRoot(f"{n} has no square root in {self}")
        return Fraction(a, b)


# ---------------------------------------------------------------------------------------
# cyclotomic fields


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the ``n``-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """``x**k mod Phi_n`` for ``k < max(n, 2*phi)`` as integer coefficient rows."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(max(n, 2 * deg)):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic modulus
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi_poly[:-1])]
    return tuple(rows)


def _normalize_cyc(coeffs: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    coeffs = tuple(coeffs)
    if den < 0:
        coeffs, den = tuple(-c for c in coeffs), -den
    g = math.gcd(den, *coeffs)
    if g == 0:
        return coeffs, 1
    if g != 1:
        coeffs, den = tuple(c // g for c in coeffs), den // g
    return coeffs, den


@dataclass(frozen=True)
class Cyclotomic(Field):
    """The field Q(zeta_order), elements reduced modulo the cyclotomic polynomial."""

    order: int

    def __post_init__(self):
        if self.order < 1:
            raise FieldError("cyclotomic order must be >= 1")

    def __str__(self) -> str:
        return f"cyclo({self.order})"

    @property
    def degree(self) -> int:
        return len(cyclotomic_polynomial(self.order)) - 1

    @property
    def root_order(self) -> int:
        """Order of the group of roots of unity in the field."""
        return _lcm(2, self.order)

    def zero(self):
        return (0,) * self.degree, 1

    def one(self):
        return (1,) + (0,) * (self.degree - 1), 1

    def basis_power(self, k: int):
        """Payload of ``zeta_order ** k``."""
        return _power_table(self.order)[k % self.order], 1

    def add(self, a, b):
        (ca, da), (cb, db) = a, b
        if da == db:
            return _normalize_cyc((x + y for x, y in zip(ca, cb)), da)
        return _normalize_cyc((x * db + y * da for x, y in zip(ca, cb)), da * db)

    def neg(self, a):
        return tuple(-c for c in a[0]), a[1]

    def mul(self, a, b):
        (ca, da), (cb, db) = a, b
        deg = len(ca)
        if deg == 1:
            return _normalize_cyc((ca[0] * cb[0],), da * db)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        conv[i + j] += x * y
        table = _power_table(self.order)
        out = list(conv[:deg])
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += c * t
        return _normalize_cyc(out, da * db)

    def is_zero(self, a):
        return not any(a[0])

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        deg = self.degree
        # solve (multiplication-by-a) x = 1 over Q
        cols = [self.mul(a, (_power_table(self.order)[k], 1)) for k in range(deg)]
        rows = [[Fraction(cols[k][0][i], cols[k][1]) for k in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        sol = _solve(rows, rhs)
        den = math.lcm(*(q.denominator for q in sol))
        return _normalize_cyc((int(q * den) for q in sol), den)

    def conj(self, a):
        coeffs, den = a
        table = _power_table(self.order)
        out = [0] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                for i, t in enumerate(table[(-k) % self.order]):
                    out[i] += c * t
        return _normalize_cyc(out, den)

    def from_fraction(self, q):
        q = Fraction(q)
        return _normalize_cyc((q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def to_complex(self, a):
        coeffs, den = a
        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * w**k for k, c in enumerate(coeffs)) / den

    def as_fraction(self, a) -> Fraction | None:
        """The rational value of ``a`` when it lies in Q, else None."""
        coeffs, den = a
        if any(coeffs[1:]):
            return None
        return Fraction(coeffs[0], den)

    def format(self, a):
        coeffs, den = a
        terms = []
        for k, c in enumerate(coeffs):
            if not c:
                continue
            q = Fraction(c, den)
            if k == 0:
                terms.append((q < 0, str(abs(q))))
                continue
            mono = f"z({self.order})" + (f"^{k}" if k > 1 else "")
            mag = abs(q)
            terms.append((q < 0, mono if mag == 1 else f"{mag}*{mono}"))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def roots_of_unity(self, n):
        m = self.root_order
        g = math.gcd(n, m)
        # generator of the g-th roots: zeta_m^(m/g), zeta_m = -zeta_order^((order+1)/2) for odd order
        step = m // g
        return [self._root_power(step * k) for k in range(g)]

    def _root_power(self, e: int):
        """``zeta_m ** e`` with ``m = root_order``."""
        m = self.root_order
        e %= m
        if m == self.order:
            return self.basis_power(e)
        # odd order: zeta_{2n} = -zeta_n^((n+1)/2)
        n = self.order
        val = self.basis_power(e * (n + 1) // 2 % n if e % 2 == 0 else (e * (n + 1) // 2) % n)
        return self.neg(val) if e % 2 else val

    def sqrt(self, n):
        if n < 0:
            s = self.sqrt(-n)
            return self.mul(s, self.zeta(4))
        if n == 0:
            return self.zero()
        cond = sqrt_conductor(n)
        if self.order % cond:
            raise NoSquareRoot(
                f"sqrt({n}) is not in {self}; use an order divisible by {cond}"
            )
        s, m = squarefree_part(n)
        result = self.from_int(s)
        for p in _factorize(m):
            result = self.mul(result, self._sqrt_prime(p))
        assert self.eq(self.mul(result, result), self.from_int(n))
        return result

    def _sqrt_prime(self, p: int):
        N = self.order
        if p == 2:
            z8 = N // 8
            return self.add(self.basis_power(z8), self.basis_power(7 * z8))
        step = N // p
        gauss = self.zero()
        for a in range(1, p):
            sign = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
            term = self.basis_power(a * step)
            gauss = self.add(gauss, term if sign > 0 else self.neg(term))
        if p % 4 == 1:
            return gauss
        # gauss^2 = -p, so sqrt(p) = -i * gauss
        return self.neg(self.mul(self.basis_power(N // 4), gauss))


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    aug = [r[:] + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


# ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    def __str__(self) -> str:
        return f"f{self.p}"

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def conj(self, a):
        return a

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} is undefined in {self}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def to_complex(self, a):
        raise FieldError("prime-field scalars have no complex embedding")

    def format(self, a):
        return f"f{self.p}:{a}"

    def generator(self) -> int:
        order = self.p - 1
        for g in range(1, self.p):
            if all(pow(g, order // q, self.p) != 1 for q in _factorize(order)) or order == 1:
                return g
        raise AssertionError("unreachable")

    def roots_of_unity(self, n):
        g = math.gcd(n, self.p - 1)
        w = pow(self.generator(), (self.p - 1) // g, self.p)
        return [pow(w, k, self.p) for k in range(g)]

    def sqrt(self, n):
        n %= self.p
        for x in range(self.p):
            if x * x % self.p == n:
                return x
        raise NoSquareRoot(f"{n} is a quadratic nonresidue mod {self.p}")


@dataclass(frozen=True)
class ComplexFloats(Field):
    tol: float = 1e-9
    exact = False

    def __str__(self) -> str:
        return "complex"

    def zero(self):
        return 0j

    def one(self):
        return 1 + 0j

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def conj(self, a):
        return a.conjugate()

    def is_zero(self, a):
        return abs(a) < self.tol

    def from_fraction(self, q):
        return complex(float(q))

    def to_complex(self, a):
        return a

    def format(self, a):
        return f"c:{a.real!r}{a.imag:+}i"

    def roots_of_unity(self, n):
        return [cmath.exp(2j * cmath.pi * k / n) for k in range(n)]

    def sqrt(self, n):
        return complex(cmath.sqrt(n))


# ---------------------------------------------------------------------------------------


class Scalar:
    """A field element with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"descriptor mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return Scalar(self.field, self.field.pow(self.value, k))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def conjugate(self) -> Scalar:
        return Scalar(self.field, self.field.conj(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __complex__(self):
        return self.field.to_complex(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return other.field == self.field and self.field.eq(self.value, other.value)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.eq(self.value, self.field.coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.field.format(self.value)})"


# ---------------------------------------------------------------------------------------
# descriptors and literals

_FIELD_RE = re.compile(r"^(?:cyclo\((\d+)\)|[fF](\d+)|(Q|rationals|reals|R)|(complex|C))$")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``reals``, ``cyclo(12)``, ``f5``, or ``complex``.

    ``reals`` maps to the exact rational backend: Q and R have the same roots
    of unity, which is all the character machinery needs.
    """
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise FieldError(f"unknown field {text!r}")
    if m.group(1):
        return Cyclotomic(int(m.group(1)))
    if m.group(2):
        return PrimeField(int(m.group(2)))
    if m.group(3):
        return Rationals()
    return ComplexFloats()


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_ZPOW_RE = re.compile(r"^z\((\d+)\)(?:\^(-?\d+))?$")
_COMPLEX_RE = re.compile(r"^c:([-+]?[\d.eE+-]*?)([-+][\d.eE+-]*)i$")


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse a scalar literal (``3/4``, ``z(8)^3``, ``f5:2``, ``c:1.0+2.0i``) into ``field``."""
    text = text.strip()
    if text.startswith("c:"):
        m = _COMPLEX_RE.match(text.replace(" ", ""))
        if not m or not isinstance(field, ComplexFloats):
            raise FieldError(f"bad complex literal {text!r} for {field}")
        return Scalar(field, complex(float(m.group(1) or 0), float(m.group(2))))
    m = re.match(r"^f(\d+):(-?\d+)$", text)
    if m:
        p = int(m.group(1))
        if field != PrimeField(p):
            raise FieldError(f"literal {text!r} does not belong to {field}")
        return Scalar(field, int(m.group(2)) % p)
    total = field.zero()
    pos = 0
    for tm in _TERM_RE.finditer(text):
        if tm.start() != pos:
            raise FieldError(f"bad scalar literal {text!r} at {pos}")
        pos = tm.end()
        sign, body = tm.group(1), tm.group(2).strip()
        val = field.one()
        for factor in body.split("*"):
            factor = factor.strip()
            zm = _ZPOW_RE.match(factor)
            if zm:
                n, k = int(zm.group(1)), int(zm.group(2) or 1)
                val = field.mul(val, field.pow(field.zeta(n), k))
            else:
                try:
                    val = field.mul(val, field.from_fraction(Fraction(factor)))
                except (ValueError, ZeroDivisionError) as exc:
                    raise FieldError(f"bad scalar factor {factor!r}") from exc
        total = field.add(total, field.neg(val) if sign == "-" else val)
    if pos != len(text) or not text:
        raise FieldError(f"bad scalar literal {text!r}")
    return Scalar(field, total)


def zeta(n: int, field: Field) -> Scalar:
    return Scalar(field, field.zeta(n))


def conjugate(a: Scalar) -> Scalar:
    return a.conjugate()


def sqrt_dim(d: int, field: Field) -> Scalar:
    """A square root of ``d`` in ``field``; raises :class:`NoSquareRoot` if absent."""
    return Scalar(field, field.sqrt(d))


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise FieldError(f"unknown operation {op!r}")
