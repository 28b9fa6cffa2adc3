"""Real algebraic numbers as (minimal polynomial, isolating interval)."""
from __future__ import annotations

import threading
from fractions import Fraction

from .poly import IntPolynomial, count_real_roots, isolate_real_roots, refine_root


class AlgebraicReal:
    """A real root of an irreducible integer polynomial.

    The isolating interval only ever shrinks. Refinement is guarded by a lock
    so instances can be shared across threads.
    """

    def __init__(self, minpoly: IntPolynomial, lo: Fraction, hi: Fraction, *, check: bool = True):
        minpoly = minpoly.primitive()
        lo, hi = Fraction(lo), Fraction(hi)
        if check:
            if minpoly.degree < 1:
                raise ValueError("minimal polynomial must have positive degree")
            if lo > hi:
                raise ValueError("empty interval")
            if lo == hi:
                if minpoly.sign_at(lo) != 0:
                    raise ValueError("degenerate interval is not a root")
            elif minpoly.degree == 1:
                r = Fraction(-minpoly.coeffs[0], minpoly.coeffs[1])
                if not lo <= r <= hi:
                    raise ValueError("interval does not contain the root")
                lo = hi = r
            elif minpoly.sign_at(lo) * minpoly.sign_at(hi) >= 0 or count_real_roots(minpoly, lo, hi) != 1:
                raise ValueError("interval does not isolate a single root")
        if minpoly.degree == 1:
            lo = hi = Fraction(-minpoly.coeffs[0], minpoly.coeffs[1])
        self.minpoly = minpoly
        self._lo = lo
        self._hi = hi
        self._lock = threading.Lock()

    @classmethod
    def rational(cls, r) -> "AlgebraicReal":
        r = Fraction(r)
        return cls(IntPolynomial([-r.numerator, r.denominator]), r, r)

    @classmethod
    def roots_of(cls, p: IntPolynomial) -> list["AlgebraicReal"]:
        """All real roots of an irreducible polynomial, ascending."""
        return [cls(p, lo, hi, check=False) for lo, hi in isolate_real_roots(p)]

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def is_rational(self) -> bool:
        return self._lo == self._hi

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Interval of width at most 2**-bits around the root."""
        width = Fraction(1, 1 << bits)
        with self._lock:
            if self._hi - self._lo > width:
                self._lo, self._hi = refine_root(self.minpoly, self._lo, self._hi, width)
            return self._lo, self._hi

    def compare(self, r) -> int:
        """Sign of (self - r) for rational r, decided exactly."""
        r = Fraction(r)
        if self.is_rational():
            return (self._lo > r) - (self._lo < r)
        if self.minpoly.sign_at(r) == 0:
            return 0 if self._lo <= r <= self._hi else (1 if self._lo > r else -1)
        bits = 8
        while True:
            lo, hi = self.enclosure(bits)
            if lo > r:
                return 1
            if hi < r:
                return -1
            bits *= 2

    def __float__(self) -> float:
        lo, hi = self.enclosure(60)
        return float((lo + hi) / 2)

    def same_number(self, other: "AlgebraicReal") -> bool:
        if self.minpoly != other.minpoly:
            return False
        if self.is_rational():
            return self._lo == other._lo
        a, b = self.interval
        c, d = other.interval
        lo, hi = max(a, c), min(b, d)
        if lo > hi:
            return False
        # Endpoints of non-degenerate isolating intervals are never roots, so
        # the intersection holds a root iff both intervals isolate that root.
        if lo == hi:
            return self.minpoly.sign_at(lo) == 0
        return count_real_roots(self.minpoly, lo, hi) == 1

    def __repr__(self) -> str:
        return f"AlgebraicReal({self.minpoly}, [{self._lo}, {self._hi}])"
