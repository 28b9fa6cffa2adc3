"""Deciding representations Q(x) = alpha by pruned enumeration of the trace form."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

from ..errors import BudgetExceeded, NotIntegral, NotTotallyNonnegative
from ..exactnum import FieldElement
from .lattice import QuadraticLattice, ZRestriction, ldl, restrict_scalars

DEFAULT_BUDGET = 2_000_000
_SLACK = 2.0 ** -20


@dataclass(frozen=True)
class Representation:
    coords: tuple[int, ...]
    vector: tuple[FieldElement, ...]

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "vector": [v.to_json()["coords"] for v in self.vector]}


class _Enumerator:
    """Depth-first walk over {x : x^t T x <= bound}, first coordinate outermost, values descending."""

    def __init__(self, R: ZRestriction, bound: Fraction, budget: int):
        T = R.trace_gram
        m = R.dim
        self.m = m
        rev = [[T[m - 1 - a][m - 1 - b] for b in range(m)] for a in range(m)]
        Lm, D = ldl(rev)
        self.L = [[float(v) for v in row] for row in Lm]
        self.D = [float(v) for v in D]
        self.bound = float(bound)
        self.budget = budget
        self.nodes = 0
        den = 1
        for row in T:
            for v in row:
                den = lcm(den, v.denominator)
        self.den = den
        self.Ti = [[int(v * den) for v in row] for row in T]
        self.target = bound * den

    def exact_value(self, x: Sequence[int]) -> int:
        Ti = self.Ti
        nz = [i for i, v in enumerate(x) if v]
        return sum(x[i] * x[j] * Ti[i][j] for i in nz for j in nz)

    def leaves(self, exact_trace: bool = True) -> Iterator[tuple[int, ...]]:
        m = self.m
        xr = [0] * m  # coordinates in reversed order
        slack_r = _SLACK * (1.0 + self.bound)

        def walk(i: int, remaining: float):
            c = -sum(self.L[k][i] * xr[k] for k in range(i + 1, m))
            r = math.sqrt(max(remaining + slack_r, 0.0) / self.D[i])
            pad = _SLACK * (1.0 + abs(c) + r)
            hi = math.floor(c + r + pad)
            lo = math.ceil(c - r - pad)
            for v in range(hi, lo - 1, -1):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise BudgetExceeded(f"enumeration exceeded {self.budget} nodes")
                xr[i] = v
                rest = remaining - self.D[i] * (v - c) ** 2
                if i == 0:
                    x = tuple(reversed(xr))
                    if not exact_trace or self.exact_value(x) == self.target:
                        yield x
                else:
                    yield from walk(i - 1, rest)
            xr[i] = 0

        if m == 0:
            if self.target == 0:
                yield ()
            return
        yield from walk(m - 1, self.bound)


def _check_target(L: QuadraticLattice, alpha: FieldElement) -> FieldElement:
    alpha = L.field(alpha)
    if not alpha.is_integral():
        raise NotIntegral("target is not an algebraic integer")
    if not alpha.is_zero() and not alpha.is_totally_positive():
        raise NotTotallyNonnegative("target must be totally positive or zero")
    return alpha


def represent(L: QuadraticLattice, alpha: FieldElement, budget: int = DEFAULT_BUDGET,
              restriction: ZRestriction | None = None) -> Representation | None:
    """Lexicographically largest x with Q(x) == alpha, or None when no vector represents alpha."""
    alpha = _check_target(L, alpha)
    if alpha.is_zero():
        x = (0,) * L.dim
        return Representation(x, L.to_vector(x))
    R = restriction or restrict_scalars(L)
    for x in _Enumerator(R, alpha.trace(), budget).leaves():
        if L.q(x) == alpha:
            return Representation(x, L.to_vector(x))
    return None


def all_representations(L: QuadraticLattice, alpha: FieldElement, budget: int = DEFAULT_BUDGET) -> list[Representation]:
    """Every x with Q(x) == alpha, in descending lexicographic order."""
    alpha = _check_target(L, alpha)
    R = restrict_scalars(L)
    return [Representation(x, L.to_vector(x)) for x in _Enumerator(R, alpha.trace(), budget).leaves() if L.q(x) == alpha]


def short_vectors(L: QuadraticLattice, trace_bound, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All x with Tr(Q(x)) <= trace_bound."""
    R = restrict_scalars(L)
    en = _Enumerator(R, Fraction(trace_bound), budget)
    return [x for x in en.leaves(exact_trace=False) if en.exact_value(x) <= en.target]
