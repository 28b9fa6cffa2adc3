"""Totally real number fields and their elements in a power basis."""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

import flint
import mpmath

from ..errors import DivisionByZero, FieldMismatch, NotIrreducible, NotMonic, NotTotallyReal
from .algebraic import AlgebraicReal
from .intervals import ceil_scaled, floor_scaled, horner, to_fractions
from .poly import IntPolynomial, count_real_roots, sturm_sequence


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def _fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    if hasattr(v, "p") and hasattr(v, "q"):  # flint.fmpq
        return Fraction(int(v.p), int(v.q))
    return Fraction(v)


class NumberField:
    """A totally real field Q(theta), theta a root of a monic irreducible polynomial."""

    def __init__(self, minpoly: IntPolynomial | Sequence[int]):
        if not isinstance(minpoly, IntPolynomial):
            minpoly = IntPolynomial(minpoly)
        if minpoly.degree < 1:
            raise NotIrreducible(f"{minpoly} has no roots")
        if not minpoly.is_monic():
            raise NotMonic(f"{minpoly} is not monic")
        _, factors = minpoly.to_flint().factor()
        if len(factors) != 1 or factors[0][1] != 1:
            raise NotIrreducible(f"{minpoly} is reducible over Q")
        nreal = count_real_roots(minpoly, seq=sturm_sequence(minpoly)) if minpoly.degree > 1 else 1
        if nreal < minpoly.degree:
            raise NotTotallyReal(f"{minpoly} has only {nreal} real roots out of {minpoly.degree}")
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self.embeddings: list[AlgebraicReal] = AlgebraicReal.roots_of(minpoly)
        # reduction rule theta^d = -sum(m_k theta^k)
        self._low = minpoly.coeffs[:-1]
        self._lock = threading.Lock()

    # -- identity -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly})"

    @property
    def principal_embedding(self) -> int:
        """Index of the embedding sending theta to the largest real root."""
        return self.degree - 1

    # -- elements -------------------------------------------------------------
    def element(self, coords: Iterable) -> "FieldElement":
        return FieldElement(self, coords)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        return FieldElement(self, [value])

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return FieldElement(self, [-self.minpoly.coeffs[0]])
        return FieldElement(self, [0, 1])

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, [1])

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, [0])

    # -- cached invariants ----------------------------------------------------
    @cached_property
    def power_sums(self) -> tuple[int, ...]:
        """Tr(theta^k) for 0 <= k <= 2d - 2 by Newton's identities."""
        d = self.degree
        a = self.minpoly.coeffs  # a[d] == 1
        p = [d]
        for k in range(1, 2 * d - 1):
            s = 0
            for i in range(1, min(k, d) + 1):
                if i == k:
                    s += k * a[d - k]
                else:
                    s += a[d - i] * p[k - i]
            p.append(-s)
        return tuple(p)

    @cached_property
    def discriminant(self) -> int:
        return int(self.minpoly.to_flint().discriminant())

    @cached_property
    def index_bound(self) -> int:
        """Largest D with D^2 | disc(minpoly); denominators of integral elements divide it."""
        disc = abs(self.discriminant)
        out = 1
        for p, e in flint.fmpz(disc).factor():
            out *= int(p) ** (e // 2)
        return out

    @cached_property
    def coordinate_scale(self) -> Fraction:
        """Upper bound on max_i sum_j |V^-1_ij| for the Vandermonde of the embeddings.

        Any element whose conjugates are bounded by H has power-basis
        coordinates bounded by ``coordinate_scale * H``.
        """
        d = self.degree
        if d == 1:
            return Fraction(1)
        with mpmath.workprec(64 + 8 * d):
            nodes = []
            for emb in self.embeddings:
                lo, hi = emb.enclosure(64 + 8 * d)
                nodes.append(mpmath.mpf(lo.numerator) / lo.denominator)
            V = mpmath.matrix(d, d)
            for j, t in enumerate(nodes):
                for i in range(d):
                    V[j, i] = t ** i
            W = V ** -1
            best = max(sum(abs(W[i, j]) for j in range(d)) for i in range(d))
            bound = Fraction(mpmath.nstr(best * mpmath.mpf("1.01") + mpmath.mpf(2) ** -20, 30))
        return bound

    # -- embeddings -----------------------------------------------------------
    def theta_enclosure(self, j: int, k: int) -> tuple[int, int]:
        lo, hi = self.embeddings[j].enclosure(k)
        return floor_scaled(lo, k), ceil_scaled(hi, k)


@lru_cache(maxsize=None)
def _field_cached(coeffs: tuple[int, ...]) -> NumberField:
    return NumberField(IntPolynomial(coeffs))


def field_create(minpoly: IntPolynomial | Sequence[int]) -> NumberField:
    """Validated field; identical polynomials share one instance (and its refinements)."""
    if not isinstance(minpoly, IntPolynomial):
        minpoly = IntPolynomial(minpoly)
    return _field_cached(minpoly.coeffs)


def rationals() -> NumberField:
    return field_create([0, 1])


class FieldElement:
    """Element of a NumberField as integer numerators over a common denominator."""

    __slots__ = ("field", "_num", "_den", "_minpoly")

    def __init__(self, field: NumberField, coords: Iterable = ()):
        fr = [_fraction(c) for c in coords]
        d = field.degree
        if len(fr) > d:
            if any(fr[d:]):
                raise ValueError(f"{len(fr)} coordinates for a degree-{d} field")
            fr = fr[:d]
        fr += [Fraction(0)] * (d - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) for c in fr]
        self._set(field, num, den)

    def _set(self, field, num, den):
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_num", tuple(num))
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_minpoly", None)

    @classmethod
    def _raw(cls, field, num, den) -> "FieldElement":
        obj = cls.__new__(cls)
        obj._set(field, num, den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- accessors ------------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._den, other._den
        l = a * b // gcd(a, b)
        fa, fb = l // a, l // b
        return FieldElement._raw(self.field, [x * fa + y * fb for x, y in zip(self._num, other._num)], l)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.field, [-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement._raw(self.field, _mulmod(self._num, other._num, self.field._low), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            v = 1 / self.rational_value()
            return FieldElement(self.field, [v])
        a = flint.fmpq_poly([flint.fmpq(c, self._den) for c in self._num])
        m = flint.fmpq_poly(list(self.field.minpoly.coeffs))
        g, s, _ = a.xgcd(m)
        g0 = _fraction(g.coeffs()[0])
        return FieldElement(self.field, [_fraction(c) / g0 for c in s.coeffs()])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self.field.minpoly, self._num, self._den))

    def __repr__(self) -> str:
        return f"FieldElement({self.field.minpoly}, {[str(c) for c in self.coords]})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts) if parts else "0"

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {"minpoly": self.field.minpoly.to_json(), "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict, field: NumberField | None = None) -> "FieldElement":
        poly = IntPolynomial(int(c) for c in obj["minpoly"])
        if field is None:
            field = field_create(poly)
        elif field.minpoly != poly:
            raise FieldMismatch("serialized element belongs to a different field")
        return cls(field, obj["coords"])

    # -- exact invariants -----------------------------------------------------
    def multiplication_matrix(self) -> list[list[int]]:
        """Integer matrix N with N / denominator = matrix of multiplication by self."""
        d = self.field.degree
        cols = []
        cur = list(self._num)
        for i in range(d):
            cols.append(cur)
            cur = _mulmod(cur, [0, 1] if d > 1 else [self.field.gen._num[0]], self.field._low) if i < d - 1 else cur
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def charpoly(self) -> list[Fraction]:
        """Characteristic polynomial of multiplication by self, ascending coefficients."""
        d = self.field.degree
        N = flint.fmpz_mat(self.multiplication_matrix())
        chi = [int(c) for c in N.charpoly().coeffs()]
        den = self._den
        return [Fraction(chi[k] * den ** k, den ** d) for k in range(d + 1)]

    def minpoly(self) -> IntPolynomial:
        """Minimal polynomial over Q as a primitive integer polynomial with positive lead."""
        if self._minpoly is not None:
            return self._minpoly
        if self.is_rational():
            v = self.rational_value()
            mp = IntPolynomial([-v.numerator, v.denominator])
        else:
            chi = IntPolynomial.from_rational(self.charpoly()).to_flint()
            g = chi.gcd(chi.derivative())
            mp = IntPolynomial.from_flint(chi // g).primitive()
        object.__setattr__(self, "_minpoly", mp)
        return mp

    def trace(self) -> Fraction:
        ps = self.field.power_sums
        return Fraction(sum(c * p for c, p in zip(self._num, ps)), self._den)

    def norm(self) -> Fraction:
        d = self.field.degree
        if self.is_zero():
            return Fraction(0)
        if d == 1:
            return self.rational_value()
        h = flint.fmpz_poly(list(self._num))
        res = int(self.field.minpoly.to_flint().resultant(h))
        return Fraction(res, self._den ** d)

    def is_integral(self) -> bool:
        return self.minpoly().is_monic()

    # -- real embeddings ------------------------------------------------------
    def enclosure(self, j: int, bits: int) -> tuple[Fraction, Fraction]:
        """Rigorous interval of width <= 2**-bits around sigma_j(self)."""
        if self.is_rational():
            v = self.rational_value()
            return v, v
        target = 1 << max(bits, 0)
        k = bits + 2 * self.field.degree + max(abs(c) for c in self._num).bit_length() + 8
        while True:
            t = self.field.theta_enclosure(j, k)
            lo, hi = horner(self._num, self._den, t, k)
            if (hi - lo) * target <= (1 << k):
                return to_fractions((lo, hi), k)
            k += k // 2 + 8

    def sign(self, j: int) -> int:
        """Sign of sigma_j(self); nonzero elements never vanish under an embedding."""
        if self.is_zero():
            return 0
        bits = 16
        while True:
            lo, hi = self.enclosure(j, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def signs(self) -> list[int]:
        return [self.sign(j) for j in range(self.field.degree)]

    def is_totally_positive(self) -> bool:
        return not self.is_zero() and all(self.sign(j) > 0 for j in range(self.field.degree))

    def house_compare(self, r) -> Ordering:
        """Compare max_j |sigma_j(self)| with the rational r."""
        r = Fraction(r)
        if r < 0:
            return Ordering.GT
        if self.is_rational():
            h = abs(self.rational_value())
            return Ordering.LT if h < r else Ordering.EQ if h == r else Ordering.GT
        # irrational elements have no rational conjugates, so no conjugate equals +-r
        bits = 16
        pending = list(range(self.field.degree))
        while pending:
            still = []
            for j in pending:
                lo, hi = self.enclosure(j, bits)
                if hi < r and lo > -r:
                    continue
                if lo > r or hi < -r:
                    return Ordering.GT
                still.append(j)
            pending = still
            bits *= 2
        return Ordering.LT

    def approx(self, j: int | None = None) -> float:
        j = self.field.principal_embedding if j is None else j
        lo, hi = self.enclosure(j, 60)
        return float((lo + hi) / 2)


def _mulmod(a: Sequence[int], b: Sequence[int], low: Sequence[int]) -> list[int]:
    """Product of integer coordinate vectors modulo the monic minimal polynomial."""
    d = len(low)
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            off = k - d
            for j in range(d):
                if low[j]:
                    prod[off + j] -= c * low[j]
    prod = prod[:d]
    prod += [0] * (d - len(prod))
    return prod
