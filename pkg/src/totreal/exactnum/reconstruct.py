"""Recognizing real algebraic numbers inside a number field.

A target y that lies in K satisfies an integer relation
``D*y = c_0 + c_1*theta + ... + c_{d-1}*theta^{d-1}`` whose size is bounded a
priori (D from the index bound, |c_i| from the house of y). LLL on the
relation lattice built from one real embedding either finds that relation,
which is then verified exactly, or produces a first basis vector long enough
to prove no relation of that size exists.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable

import flint

from ..errors import NotTotallyNonnegative
from .algebraic import AlgebraicReal
from .field import FieldElement, NumberField
from .poly import root_bound

# LLL with delta = 0.99, eta = 0.51 guarantees |b_1|^2 <= ALPHA^(n-1) * lambda_1^2
_ALPHA = Fraction(13704, 10000)
# error in each scaled entry is at most one unit of rounding plus the enclosure width
_ENTRY_ERROR = 2


def _ceil_sqrt(x: Fraction) -> int:
    r = isqrt(x.numerator // x.denominator)
    while Fraction(r * r) < x:
        r += 1
    return r


def _relation_search(K: NumberField, embedding: int, target: Callable[[int], tuple[Fraction, Fraction]],
                     multiplier: int, house: Fraction,
                     verify: Callable[[FieldElement], bool]) -> FieldElement | None:
    d = K.degree
    n = d + 1
    coord_bound = K.coordinate_scale * house * multiplier
    R2 = Fraction(multiplier) ** 2 + d * coord_bound ** 2
    limit = _ALPHA ** (n - 1) * R2 * (1 + n * _ENTRY_ERROR ** 2)
    log_r = _ceil_sqrt(R2).bit_length()
    prec = n * (log_r + n // 2 + 10) + 20
    powers = [K.element([0] * i + [1]) for i in range(d)]
    while True:
        N = 1 << prec
        entries = []
        lo, _ = target(prec + 2)
        entries.append((lo.numerator * N) // lo.denominator)
        for p in powers:
            plo, _ = p.enclosure(embedding, prec + 2)
            entries.append((plo.numerator * N) // plo.denominator)
        rows = [[1 if i == j else 0 for j in range(n)] + [entries[i]] for i in range(n)]
        reduced = flint.fmpz_mat(rows).lll()
        first = None
        for r in range(n):
            row = [int(reduced[r, c]) for c in range(n + 1)]
            if first is None:
                first = row
            if row[0] == 0:
                continue
            cand = K.element(Fraction(-row[i + 1], row[0]) for i in range(d))
            if verify(cand):
                return cand
        if sum(c * c for c in first) > limit:
            return None
        prec *= 2


def _inside(y: FieldElement, j: int, x: AlgebraicReal) -> bool:
    """Whether sigma_j(y) equals x, given that y is a root of x's minimal polynomial."""
    lo_x, hi_x = x.interval
    bits = 32
    while True:
        a, b = y.enclosure(j, bits)
        if lo_x < a and b < hi_x:
            return True
        if b < lo_x or a > hi_x:
            return False
        bits *= 2


def contains(K: NumberField, x: AlgebraicReal, embedding: int | None = None) -> FieldElement | None:
    """x written in K's power basis, identifying the real line through ``embedding``.

    The default embedding is the one sending the generator to its largest root.
    """
    j = K.principal_embedding if embedding is None else embedding
    if x.is_rational():
        return K(x.interval[0])
    e = x.degree
    if K.degree % e:
        return None
    mx = x.minpoly

    def verify(y: FieldElement) -> bool:
        if y.is_rational():
            return False
        acc = K.zero
        for c in reversed(mx.coeffs):
            acc = acc * y + c
        return acc.is_zero() and _inside(y, j, x)

    multiplier = K.index_bound * mx.leading
    house = Fraction(root_bound(mx))
    return _relation_search(K, j, x.enclosure, multiplier, house, verify)


def sqrt_in_field(x: FieldElement) -> FieldElement | None:
    """A y in the field with y*y == x, or None; the root returned is positive at the principal embedding."""
    K = x.field
    if x.is_zero():
        return K.zero
    signs = x.signs()
    if any(s < 0 for s in signs):
        raise NotTotallyNonnegative("a square must be totally nonnegative")
    if x.is_rational():
        v = x.rational_value()
        a, b = isqrt(v.numerator), isqrt(v.denominator)
        if a * a == v.numerator and b * b == v.denominator:
            return K(Fraction(a, b))
        if K.degree == 1:
            return None
    j = K.principal_embedding
    mp = x.minpoly()
    # (lead * y)^2 = lead * (lead * x) is integral, so lead * y is integral
    multiplier = K.index_bound * mp.leading
    house = Fraction(0)
    for i in range(K.degree):
        lo, hi = x.enclosure(i, 8)
        house = max(house, hi)
    house = Fraction(_ceil_sqrt(house * (1 << 20)), 1 << 10)

    def target(bits: int) -> tuple[Fraction, Fraction]:
        lo, hi = x.enclosure(j, 2 * bits + 4)
        shift = bits + 2
        a = isqrt((lo.numerator << (2 * shift)) // lo.denominator)
        return Fraction(a, 1 << shift), Fraction(a + 1, 1 << shift)

    def verify(y: FieldElement) -> bool:
        return y * y == x

    y = _relation_search(K, j, target, multiplier, house, verify)
    if y is not None and y.sign(j) < 0:
        y = -y
    return y


def algebraic_of(y: FieldElement, embedding: int | None = None) -> AlgebraicReal:
    """The real number sigma_j(y) as an AlgebraicReal."""
    j = y.field.principal_embedding if embedding is None else embedding
    mp = y.minpoly()
    if mp.degree == 1:
        return AlgebraicReal.rational(y.rational_value())
    roots = AlgebraicReal.roots_of(mp)
    for r in roots:
        if _inside(y, j, r):
            return r
    raise AssertionError("embedding value is not a root of its minimal polynomial")


__all__ = ["contains", "sqrt_in_field", "algebraic_of"]
