"""Units of real quadratic fields and totally positive unit square classes."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import Sequence

import flint

from .errors import NotSquarefree
from .exactnum import FieldElement, NumberField, field_create, sqrt_in_field


class RingKind(enum.Enum):
    Z_SQRT_D = "Z_sqrtD"
    Z_HALF = "Z_half"


@dataclass(frozen=True)
class QuadraticFieldDesc:
    D: int

    def __post_init__(self):
        if self.D < 2 or not is_squarefree(self.D):
            raise NotSquarefree(f"D = {self.D} is not a squarefree integer > 1")

    @property
    def ring_kind(self) -> RingKind:
        return RingKind.Z_HALF if self.D % 4 == 1 else RingKind.Z_SQRT_D

    @property
    def field(self) -> NumberField:
        """Q(sqrt D) generated by omega, so that Z[omega] is the full ring of integers."""
        if self.ring_kind is RingKind.Z_HALF:
            return field_create([-(self.D - 1) // 4, -1, 1])
        return field_create([-self.D, 0, 1])

    def sqrt_d(self) -> FieldElement:
        w = self.field.gen
        return 2 * w - 1 if self.ring_kind is RingKind.Z_HALF else w

    def norm_form(self, x: int, y: int) -> int:
        """N(x + y*omega)."""
        if self.ring_kind is RingKind.Z_HALF:
            return x * x + x * y - y * y * ((self.D - 1) // 4)
        return x * x - self.D * y * y


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in flint.fmpz(abs(n)).factor())


def _convergents(D: int, P: int, Q: int):
    """Convergents of (P + sqrt D) / Q, assuming Q divides D - P^2."""
    r = isqrt(D)
    p0, p1 = 1, 0
    q0, q1 = 0, 1
    while True:
        a = (P + r) // Q if Q > 0 else (-P - r - 1) // (-Q)
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        yield p0, q0
        P = a * Q - P
        Q = (D - P * P) // Q


def fundamental_unit(D: int) -> tuple[FieldElement, int]:
    """The unit eps > 1 generating the units of the ring of integers modulo +-1, with its norm."""
    desc = QuadraticFieldDesc(D)
    # x + y*omega is a unit only if x/y approximates -conj(omega)
    P, Q = (-1, 2) if desc.ring_kind is RingKind.Z_HALF else (0, 1)
    for x, y in _convergents(D, P, Q):
        n = desc.norm_form(x, y)
        if n in (1, -1):
            eps = desc.field.element([x, y])
            return eps, n
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class UnitClassReport:
    """Representatives of totally positive units modulo squares of units; the first is 1."""

    field: NumberField
    fundamental_unit: FieldElement | None
    norm: int | None
    representatives: tuple[FieldElement, ...]

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    def to_json(self) -> dict:
        return {
            "field": self.field.minpoly.to_json(),
            "fundamental_unit": self.fundamental_unit.to_json() if self.fundamental_unit is not None else None,
            "norm": self.norm,
            "class_count": self.class_count,
            "representatives": [r.to_json() for r in self.representatives],
        }

    @classmethod
    def from_generators(cls, field: NumberField, generators: Sequence[FieldElement]) -> "UnitClassReport":
        """Classes spanned by -1 and the given unit generators (assumed to generate the unit group)."""
        reps: list[FieldElement] = []
        gens = [field(-1)] + [field(g) for g in generators]
        for exps in product((0, 1), repeat=len(gens)):
            u = field.one
            for g, e in zip(gens, exps):
                if e:
                    u = u * g
            if not u.is_totally_positive():
                continue
            if any(sqrt_in_field(u * r.inverse()) is not None for r in reps):
                continue
            reps.append(u)
        reps.sort(key=lambda r: (r != 1, r.approx()))
        return cls(field, None, None, tuple(reps))


def tp_unit_square_classes(D: int) -> UnitClassReport:
    eps, n = fundamental_unit(D)
    K = eps.field
    reps = [K.one]
    if n == 1:
        # eps > 1 and eps * conj(eps) = 1 put both conjugates above zero
        if not eps.is_totally_positive():
            raise AssertionError("norm-one unit above 1 must be totally positive")
        if sqrt_in_field(eps) is not None:
            raise AssertionError("fundamental unit cannot be a square")
        reps.append(eps)
    return UnitClassReport(K, eps, n, tuple(reps))
