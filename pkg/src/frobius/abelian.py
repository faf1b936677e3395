"""Finite abelian groups Z_n1 x ... x Z_nk, the rational circle Q/Z, and their characters."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

from .field import Field, Scalar


class GroupError(ValueError):
    pass


class MaschkeViolation(GroupError):
    """The field characteristic divides the group order."""


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


@dataclass(frozen=True)
class AbelianGroup:
    """A finite product of cyclic groups, or (``circle=True``) the rational circle Q/Z."""

    factors: tuple[int, ...] = ()
    circle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(n) for n in self.factors))
        if self.circle and self.factors:
            raise GroupError("the circle group takes no factors")
        if any(n < 2 for n in self.factors):
            raise GroupError(f"cyclic factors must be >= 2, got {self.factors}")

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text in ("S1", "circle"):
            return cls(circle=True)
        if text in ("1", "Z1", "trivial"):
            return cls(())
        if not re.fullmatch(r"Z\d+(x\s*Z\d+)*", text):
            raise GroupError(f"bad group literal {text!r}")
        return cls(tuple(int(p[1:]) for p in re.split(r"\s*x\s*", text)))

    def __str__(self) -> str:
        if self.circle:
            return "S1"
        return "x".join(f"Z{n}" for n in self.factors) or "Z1"

    @property
    def finite(self) -> bool:
        return not self.circle

    def order(self) -> int:
        if self.circle:
            raise GroupError("the circle group is infinite")
        return math.prod(self.factors)

    def exponent(self) -> int:
        if self.circle:
            raise GroupError("the circle group has no finite exponent")
        return reduce(math.lcm, self.factors, 1)

    def zero(self) -> GroupElement:
        if self.circle:
            return GroupElement(self, (Fraction(0),))
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, coords) -> GroupElement:
        if self.circle:
            if isinstance(coords, (tuple, list)):
                (coords,) = coords
            return GroupElement(self, (Fraction(coords) % 1,))
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise GroupError(f"{coords} has wrong length for {self}")
        return GroupElement(self, tuple(int(c) % n for c, n in zip(coords, self.factors)))

    def parse_element(self, text: str) -> GroupElement:
        text = text.strip()
        try:
            if self.circle:
                return self.element(Fraction(text))
            if text.startswith("("):
                if not text.endswith(")"):
                    raise ValueError
                parts = [p for p in text[1:-1].split(",") if p.strip()]
                return self.element(tuple(int(p) for p in parts))
            if "/" in text:
                # an angle literal into a cyclic group: k/n means k*(N/n)
                q = Fraction(text)
                if len(self.factors) != 1 or (q * self.factors[0]).denominator != 1:
                    raise ValueError
                return self.element(int(q * self.factors[0]))
            value = int(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise GroupError(f"bad element literal {text!r} for {self}") from exc
        if len(self.factors) == 1:
            return self.element(value)
        if value == 0:
            return self.zero()
        raise GroupError(f"element {text!r} of {self} needs a tuple literal")

    def elements(self) -> list[GroupElement]:
        if self.circle:
            raise GroupError("cannot enumerate the circle group")
        return [GroupElement(self, c) for c in itertools.product(*(range(n) for n in self.factors))]

    def index(self, e: GroupElement) -> int:
        """Row-major index of ``e`` in :meth:`elements`."""
        i = 0
        for c, n in zip(e.coords, self.factors):
            i = i * n + c
        return i

    def canonical(self) -> AbelianGroup:
        """Invariant-factor form n_1 | n_2 | ... of the same group."""
        if self.circle:
            return self
        powers: dict[int, list[int]] = {}
        for n in self.factors:
            for p, e in _factorize(n).items():
                powers.setdefault(p, []).append(p**e)
        for lst in powers.values():
            lst.sort(reverse=True)
        width = max((len(v) for v in powers.values()), default=0)
        invariants = []
        for i in range(width):
            invariants.append(math.prod(v[i] for v in powers.values() if i < len(v)))
        return AbelianGroup(tuple(reversed(invariants)))

    def subgroup(self, gens: Sequence[GroupElement]) -> list[GroupElement]:
        """Elements of the subgroup generated by ``gens`` (finite groups, or finitely many circle generators)."""
        seen = {self.zero()}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x + g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda e: e.coords)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple

    def _check(self, other: GroupElement):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupError(f"cannot combine elements of {self.group} and {getattr(other, 'group', other)}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return self.group.element(tuple(-a for a in self.coords))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return self.group.element(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        if self.group.circle:
            return self.coords[0].denominator
        return reduce(math.lcm, (n // math.gcd(n, c) for c, n in zip(self.coords, self.group.factors)), 1)

    def __str__(self) -> str:
        if self.group.circle:
            return str(self.coords[0])
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"{self.group}:{self}"


def group_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def exponent(G: AbelianGroup) -> int:
    return G.exponent()


@dataclass(frozen=True)
class Character:
    domain: AbelianGroup
    field: Field
    generator_images: tuple  # payloads

    def __call__(self, e: GroupElement) -> Scalar:
        return Scalar(self.field, self.value(e))

    def value(self, e: GroupElement):
        F = self.field
        out = F.one()
        for img, c in zip(self.generator_images, e.coords):
            out = F.mul(out, F.pow(img, c))
        return out

    def __mul__(self, other: Character) -> Character:
        F = self.field
        return Character(
            self.domain, F, tuple(F.mul(a, b) for a, b in zip(self.generator_images, other.generator_images))
        )

    def inverse(self) -> Character:
        F = self.field
        return Character(self.domain, F, tuple(F.inv(a) for a in self.generator_images))

    def __str__(self) -> str:
        return "(" + ", ".join(self.field.format(a) for a in self.generator_images) + ")"


def characters(G: AbelianGroup, F: Field) -> list[Character]:
    if G.circle:
        raise GroupError("characters are only enumerated for finite groups")
    per_factor = [F.roots_of_unity(n) for n in G.factors]
    return [Character(G, F, tuple(imgs)) for imgs in itertools.product(*per_factor)]


def _roots_of_xd_minus_1(d: int, F: Field) -> int:
    return len(F.roots_of_unity(d))


def has_enough_characters(G: AbelianGroup, F: Field) -> bool:
    n = G.order()
    if F.characteristic and n % F.characteristic == 0:
        raise MaschkeViolation(f"char {F.characteristic} divides |{G}| = {n}")
    by_count = len(characters(G, F)) == n
    # splitting-field criterion: x^d - 1 has d distinct roots in F
    d = G.exponent()
    by_split = _roots_of_xd_minus_1(d, F) == d
    if by_count != by_split:
        raise AssertionError(f"character count and splitting criterion disagree for {G}, {F}")
    return by_count


def iter_elements(G: AbelianGroup) -> Iterator[GroupElement]:
    yield from G.elements()
