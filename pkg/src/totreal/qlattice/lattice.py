"""Quadratic lattices over totally real fields and their restriction to Z."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import flint

from ..errors import (DiagonalNotIntegral, NotPositiveDefinite, NotSymmetric,
                      OffDiagonalNotHalfIntegral, ZeroVector)
from ..exactnum import FieldElement, NumberField
from .hnf import hnf, integer_kernel


@lru_cache(maxsize=None)
def _ring_basis(K: NumberField) -> tuple[FieldElement, ...]:
    if K.degree == 1:
        return (K.one,)
    if K.degree == 2:
        # theta = (-b + sqrt(f^2 * D)) / 2 for x^2 + b x + c; recover sqrt(D)
        c, b, _ = K.minpoly.coeffs
        disc = b * b - 4 * c
        f = 1
        for p, e in flint.fmpz(disc).factor():
            f *= int(p) ** (e // 2)
        root = (2 * K.gen + b) / f
        D = disc // (f * f)
        omega = (1 + root) / 2 if D % 4 == 1 else root
        return (K.one, omega)
    return tuple(K.element([0] * i + [1]) for i in range(K.degree))


def ring_basis(K: NumberField) -> tuple[FieldElement, ...]:
    """Z-basis used for coordinates: the maximal order in degree <= 2, else the power basis."""
    return _ring_basis(K)


def _is_half_integral(x: FieldElement) -> bool:
    return (2 * x).is_integral()


@dataclass(frozen=True)
class QuadraticLattice:
    """A lattice in K^n with Gram matrix ``gram``.

    With ``basis`` None the lattice is the free module over the ring basis.
    Otherwise it is the Z-span of the integer rows of ``basis``, each row a
    coordinate vector of length n*d against the ring basis.
    """

    field: NumberField
    gram: tuple[tuple[FieldElement, ...], ...]
    basis: tuple[tuple[int, ...], ...] | None = None

    @property
    def n(self) -> int:
        return len(self.gram)

    @property
    def ambient_dim(self) -> int:
        return self.n * self.field.degree

    @property
    def dim(self) -> int:
        """Z-rank of the lattice."""
        return self.ambient_dim if self.basis is None else len(self.basis)

    @property
    def rank(self) -> int:
        """Rank over K of the span."""
        if self.basis is None:
            return self.n
        return _k_rank([self.to_vector(e) for e in _unit_rows(len(self.basis))])

    # -- coordinates ----------------------------------------------------------
    def ambient_coords(self, x: Sequence[int]) -> list[int]:
        if self.basis is None:
            return list(x)
        out = [0] * self.ambient_dim
        for c, row in zip(x, self.basis):
            if c:
                for k, b in enumerate(row):
                    out[k] += c * b
        return out

    def to_vector(self, x: Sequence[int]) -> tuple[FieldElement, ...]:
        """The element of K^n with Z-coordinates x."""
        K = self.field
        omega = ring_basis(K)
        d = K.degree
        y = self.ambient_coords(x)
        out = []
        for i in range(self.n):
            v = K.zero
            for k in range(d):
                if y[i * d + k]:
                    v = v + y[i * d + k] * omega[k]
            out.append(v)
        return tuple(out)

    def bilinear(self, v: Sequence[FieldElement], w: Sequence[FieldElement]) -> FieldElement:
        K = self.field
        acc = K.zero
        for i, vi in enumerate(v):
            if vi.is_zero():
                continue
            row = K.zero
            for j, wj in enumerate(w):
                if not wj.is_zero():
                    row = row + self.gram[i][j] * wj
            acc = acc + vi * row
        return acc

    def q(self, x: Sequence[int]) -> FieldElement:
        v = self.to_vector(x)
        return self.bilinear(v, v)

    def to_json(self) -> dict:
        return {
            "field": self.field.minpoly.to_json(),
            "gram": [[e.to_json()["coords"] for e in row] for row in self.gram],
            "basis": [list(r) for r in self.basis] if self.basis is not None else None,
        }


def _unit_rows(m: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(m)] for i in range(m)]


def _k_rank(vectors: Sequence[Sequence[FieldElement]]) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        for i in range(rank + 1, len(rows)):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def lattice_create(K: NumberField, gram: Sequence[Sequence]) -> QuadraticLattice:
    n = len(gram)
    G = tuple(tuple(K(e) if not isinstance(e, (list, tuple)) else K.element(e) for e in row) for row in gram)
    if any(len(row) != n for row in G):
        raise NotSymmetric("Gram matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if G[i][j] != G[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    for i in range(n):
        if not G[i][i].is_integral():
            raise DiagonalNotIntegral(f"diagonal entry {i} is not integral")
        for j in range(i + 1, n):
            if not _is_half_integral(G[i][j]):
                raise OffDiagonalNotHalfIntegral(f"entry ({i},{j}) is not in (1/2) O_K")
    return QuadraticLattice(K, G)


def is_positive_definite(L: QuadraticLattice) -> bool:
    """Leading principal minors totally positive, tested through the LDL pivots over K."""
    n = L.n
    A = [list(row) for row in L.gram]
    for k in range(n):
        piv = A[k][k]
        if not piv.is_totally_positive():
            return False
        inv = piv.inverse()
        for i in range(k + 1, n):
            f = A[i][k] * inv
            for j in range(k + 1, n):
                A[i][j] = A[i][j] - f * A[k][j]
    return True


@dataclass(frozen=True)
class ZRestriction:
    """The trace form Tr(Q(x)) on Z^dim together with the coordinate map of L."""

    lattice: QuadraticLattice
    trace_gram: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.trace_gram)

    def coordinate_map(self) -> list[tuple[FieldElement, ...]]:
        """Images in K^n of the standard basis vectors of Z^dim."""
        return [self.lattice.to_vector(e) for e in _unit_rows(self.dim)]

    def value(self, x: Sequence[int]) -> Fraction:
        T = self.trace_gram
        return sum((x[i] * x[j] * T[i][j] for i in range(len(x)) if x[i] for j in range(len(x)) if x[j]), Fraction(0))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "trace_gram": [[str(c) for c in row] for row in self.trace_gram],
            "coordinate_map": [[e.to_json()["coords"] for e in v] for v in self.coordinate_map()],
        }


def ldl(T: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact T = L diag(D) L^t with unit lower triangular L; raises if T is not positive definite."""
    m = len(T)
    Lm = [[Fraction(0)] * m for _ in range(m)]
    D = [Fraction(0)] * m
    for i in range(m):
        for j in range(i + 1):
            s = Fraction(T[i][j]) - sum((Lm[i][k] * Lm[j][k] * D[k] for k in range(j)), Fraction(0))
            if i == j:
                if s <= 0:
                    raise NotPositiveDefinite("trace form is not positive definite")
                D[i] = s
                Lm[i][i] = Fraction(1)
            else:
                Lm[i][j] = s / D[j]
    return Lm, D


def _ambient_trace_gram(L: QuadraticLattice) -> list[list[Fraction]]:
    K = L.field
    d = K.degree
    omega = ring_basis(K)
    prods = [[omega[k] * omega[l] for l in range(d)] for k in range(d)]
    N = L.ambient_dim
    T = [[Fraction(0)] * N for _ in range(N)]
    for i in range(L.n):
        for j in range(L.n):
            g = L.gram[i][j]
            if g.is_zero():
                continue
            for k in range(d):
                for l in range(d):
                    T[i * d + k][j * d + l] = (prods[k][l] * g).trace()
    return T


def restrict_scalars(L: QuadraticLattice) -> ZRestriction:
    T = _ambient_trace_gram(L)
    if L.basis is not None:
        M = L.basis
        N = len(T)
        MT = [[sum((M[a][k] * T[k][c] for k in range(N) if M[a][k]), Fraction(0)) for c in range(N)] for a in range(len(M))]
        T = [[sum((MT[a][k] * M[b][k] for k in range(N) if M[b][k]), Fraction(0)) for b in range(len(M))] for a in range(len(M))]
    ldl(T)
    return ZRestriction(L, tuple(tuple(r) for r in T))


def orthogonal_sublattice(L: QuadraticLattice, v: Sequence[int]) -> QuadraticLattice:
    """Z-basis of {w in L : B(v, w) = 0}, for v given by its Z-coordinates in L."""
    if not any(v):
        raise ZeroVector("v must be nonzero")
    K = L.field
    d = K.degree
    vv = L.to_vector(v)
    rows = L.basis if L.basis is not None else _unit_rows(L.ambient_dim)
    cols = []
    for row in rows:
        b = L.bilinear(vv, _ambient_vector(L, row))
        cols.append(b.coords)
    den = 1
    for col in cols:
        for c in col:
            den = lcm(den, c.denominator)
    A = [[int(cols[j][i] * den) for j in range(len(cols))] for i in range(d)]
    ker = integer_kernel(A, len(rows))
    new_basis = []
    for z in ker:
        amb = [0] * L.ambient_dim
        for c, row in zip(z, rows):
            if c:
                for k, b in enumerate(row):
                    amb[k] += c * b
        new_basis.append(amb)
    new_basis = hnf(new_basis) if new_basis else []
    return QuadraticLattice(K, L.gram, tuple(tuple(r) for r in new_basis))


def _ambient_vector(L: QuadraticLattice, amb: Sequence[int]) -> tuple[FieldElement, ...]:
    return QuadraticLattice(L.field, L.gram).to_vector(amb)


def rescale(L: QuadraticLattice, u: FieldElement) -> QuadraticLattice:
    return QuadraticLattice(L.field, tuple(tuple(u * e for e in row) for row in L.gram), L.basis)
