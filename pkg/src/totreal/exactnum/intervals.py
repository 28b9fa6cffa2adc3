"""Outward-rounded interval evaluation on dyadic grids.

An interval at precision ``k`` is a pair of ints ``(lo, hi)`` standing for
``[lo / 2**k, hi / 2**k]``. Everything is integer arithmetic, so enclosures
are rigorous.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence


def floor_scaled(x: Fraction, k: int) -> int:
    return (x.numerator << k) // x.denominator


def ceil_scaled(x: Fraction, k: int) -> int:
    return -((-x.numerator << k) // x.denominator)


def _mul(a: tuple[int, int], b: tuple[int, int], k: int) -> tuple[int, int]:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p) >> k, -((-max(p)) >> k)


def horner(num: Sequence[int], den: int, t: tuple[int, int], k: int) -> tuple[int, int]:
    """Enclose ``sum(num[i] * t**i) / den`` for ``t`` in the scaled interval."""
    if not num:
        return 0, 0
    acc = (num[-1] << k, num[-1] << k)
    for c in reversed(num[:-1]):
        lo, hi = _mul(acc, t, k)
        acc = (lo + (c << k), hi + (c << k))
    if den != 1:
        acc = (acc[0] // den, -((-acc[1]) // den))
    return acc


def to_fractions(iv: tuple[int, int], k: int) -> tuple[Fraction, Fraction]:
    return Fraction(iv[0], 1 << k), Fraction(iv[1], 1 << k)


def sqrt_enclosure(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """Enclosure of sqrt over [lo, hi] (lo >= 0) on the 2^-k grid."""
    if lo < 0:
        raise ValueError("negative argument to sqrt")
    a = floor_scaled(lo, 2 * k)
    b = ceil_scaled(hi, 2 * k)
    r_lo = isqrt(a)
    r_hi = isqrt(b)
    if r_hi * r_hi < b:
        r_hi += 1
    return Fraction(r_lo, 1 << k), Fraction(r_hi, 1 << k)
