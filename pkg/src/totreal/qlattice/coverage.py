"""Which totally positive unit square classes a lattice represents."""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from ..cyclo import gamma
from ..errors import BoundViolated
from ..exactnum import FieldElement, NumberField, Ordering, sqrt_in_field
from ..units import UnitClassReport
from .enumerate import DEFAULT_BUDGET, Representation, represent, short_vectors
from .lattice import QuadraticLattice, is_positive_definite, lattice_create, restrict_scalars


@dataclass(frozen=True)
class SquareClassCoverage:
    lattice: QuadraticLattice
    tested_representatives: tuple[FieldElement, ...]
    represented: tuple[tuple[FieldElement, Representation], ...]
    bound_2n_minus_2: int
    bound_n_applicable: bool

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def applicable_bound(self) -> int:
        if self.rank == 1:
            return 1
        return self.rank if self.bound_n_applicable else self.bound_2n_minus_2

    @property
    def count(self) -> int:
        return len(self.represented)

    @property
    def exceeds_rank(self) -> bool:
        return self.count > self.rank

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "rank": self.rank,
            "tested_representatives": [r.to_json()["coords"] for r in self.tested_representatives],
            "represented": [{"class": r.to_json()["coords"], "witness": w.to_json()} for r, w in self.represented],
            "bound_2n_minus_2": self.bound_2n_minus_2,
            "bound_n_applicable": self.bound_n_applicable,
            "exceeds_rank": self.exceeds_rank,
        }


def gamma_class_avoids_units(K: NumberField, representatives: Sequence[FieldElement]) -> bool:
    """Whether no totally positive unit lies in gamma_K times a square."""
    g = gamma(K).value
    return all(sqrt_in_field(g * r) is None for r in representatives)


def represented_unit_classes(L: QuadraticLattice, report: UnitClassReport, budget: int = DEFAULT_BUDGET,
                             bound_n_applicable: bool | None = None) -> SquareClassCoverage:
    """Represent each class representative; raise if more classes appear than the bounds allow.

    Representing u*eta^2 is equivalent to representing u (scale the witness
    by eta), so testing the representatives decides the classes exactly.
    """
    reps = tuple(L.field(r) for r in report.representatives)
    R = restrict_scalars(L)
    hits = []
    for r in reps:
        w = represent(L, r, budget, restriction=R)
        if w is not None:
            hits.append((r, w))
    if bound_n_applicable is None:
        bound_n_applicable = gamma_class_avoids_units(L.field, reps)
    cov = SquareClassCoverage(L, reps, tuple(hits), 2 * L.rank - 2, bound_n_applicable)
    if cov.count > cov.applicable_bound:
        raise BoundViolated(f"rank {cov.rank} lattice represents {cov.count} unit square classes")
    return cov


@lru_cache(maxsize=64)
def integers_below(K: NumberField, house_bound, half: bool = False) -> tuple[FieldElement, ...]:
    """Elements of O_K (or (1/2)O_K) with house strictly below the bound, in a fixed order."""
    scale = 2 if half else 1
    # house < B forces Tr(x^2) < d B^2, so short vectors of the unary form <1> cover every candidate
    B = Fraction(house_bound) * scale
    unary = lattice_create(K, [[K.one]])
    out = []
    for x in short_vectors(unary, K.degree * B * B):
        e = unary.to_vector(x)[0] / scale
        if e.house_compare(house_bound) is Ordering.LT:
            out.append(e)
    out.sort(key=lambda e: (e.approx(), e.coords))
    return tuple(out)


@lru_cache(maxsize=64)
def _entry_pools(K: NumberField, house_bound) -> tuple[tuple, tuple, tuple]:
    diag = tuple(e for e in integers_below(K, house_bound + 1)
                 if e.is_totally_positive() and e.house_compare(house_bound) is not Ordering.GT)
    off = tuple(e for e in integers_below(K, house_bound + 1, half=True) if e.house_compare(house_bound) is not Ordering.GT)
    # favour small entries so that units actually get represented
    weights = tuple(1.0 / (1.0 + max(abs(e.approx(j)) for j in range(K.degree))) ** 3 for e in diag)
    return diag, weights, off


def random_positive_definite(K: NumberField, n: int, house_bound, rng: random.Random,
                             max_tries: int = 10_000) -> QuadraticLattice:
    """A seed-determined positive definite lattice with entries of house at most the bound."""
    diag, weights, off = _entry_pools(K, house_bound)
    for _ in range(max_tries):
        G = [[K.zero] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = rng.choices(diag, weights)[0]
            for j in range(i + 1, n):
                if rng.random() < 0.7:
                    G[i][j] = G[j][i] = rng.choice(off)
        L = lattice_create(K, G)
        if is_positive_definite(L):
            return L
    raise RuntimeError("no positive definite lattice found")


def high_coverage_search(report: UnitClassReport, n: int, coefficient_bound, budget: int = DEFAULT_BUDGET,
                         limit: int | None = None) -> list[SquareClassCoverage]:
    """Coverage of every positive definite Gram matrix with small entries, most classes first.

    Lattices representing more than n classes are flagged via ``exceeds_rank``;
    none are expected, but finding one is not an error.
    """
    K = report.field
    diag = [e for e in integers_below(K, coefficient_bound) if e.is_totally_positive()]
    off = integers_below(K, coefficient_bound, half=True)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    results = []
    seen = 0
    applicable = gamma_class_avoids_units(K, report.representatives)
    for ds in product(diag, repeat=n):
        if any(ds[i].approx() > ds[i + 1].approx() for i in range(n - 1)):
            continue  # permuting the basis gives isometric lattices
        for os_ in product(off, repeat=len(pairs)):
            G = [[K.zero] * n for _ in range(n)]
            for i in range(n):
                G[i][i] = ds[i]
            for (i, j), e in zip(pairs, os_):
                G[i][j] = G[j][i] = e
            L = lattice_create(K, G)
            if not is_positive_definite(L):
                continue
            results.append(represented_unit_classes(L, report, budget, applicable))
            seen += 1
            if limit is not None and seen >= limit:
                break
        if limit is not None and seen >= limit:
            break
    results.sort(key=lambda c: -c.count)
    return results
