"""The cosine values g(a) = 2cos(2*pi*a) for rational a.

Elements are written g(s/n). Minimal polynomials come from eliminating z
between the cyclotomic polynomial Phi_n(z) and z^2 - x*z + 1. Conjugates of
g(s/n) are the g(k/n) with gcd(k, n) = 1, which decrease strictly as k runs
over 0..n/2, so the position of g(s/n) among the real roots is known exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint
import mpmath

from .errors import CaseSplitViolated, NotCoprime, NotIntegral, OutOfRange
from .exactnum import AlgebraicReal, FieldElement, IntPolynomial, NumberField, contains, sqrt_in_field
from .exactnum.reconstruct import algebraic_of

# a rational lower bound for pi, used by the certified house bound
_PI_LOWER = Fraction(314159265358979, 10 ** 14)


def _euler_phi(n: int) -> int:
    return int(flint.fmpz(n).euler_phi())


@lru_cache(maxsize=4096)
def g_minpoly(n: int) -> IntPolynomial:
    """Minimal polynomial of g(s/n) for any s coprime to n."""
    if n == 1:
        return IntPolynomial([-2, 1])
    if n == 2:
        return IntPolynomial([2, 1])
    phi = [int(c) for c in flint.fmpz_poly.cyclotomic(n).coeffs()]
    # z^k = U_k(x) z + V_k(x) modulo z^2 - x z + 1
    x = flint.fmpz_poly([0, 1])
    U, V = flint.fmpz_poly([0]), flint.fmpz_poly([1])
    A, B = flint.fmpz_poly([0]), flint.fmpz_poly([0])
    for c in phi:
        if c:
            A += c * V
            B += c * U
        U, V = x * U + V, -U
    res = A * A + A * B * x + B * B
    try:
        root = res.sqrt()
    except Exception:  # flint raises DomainError on non-squares
        root = None
    if root is None:
        # the resultant is always a perfect square for n >= 3; keep a safe path anyway
        target = mpmath.mpf(2) * mpmath.cos(2 * mpmath.pi / n)
        _, factors = res.factor()
        root = min((f for f, _ in factors), key=lambda f: abs(mpmath.polyval([int(c) for c in reversed(f.coeffs())], target)))
    return IntPolynomial.from_flint(root).primitive()


def _canonical(s: int, n: int) -> tuple[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    g = gcd(s, n)
    s, n = s // g, n // g
    s %= n
    if 2 * s > n:
        s = n - s
    return s, n


def _root_index(s: int, n: int) -> int:
    """Index of g(s/n) among the ascending real roots of its minimal polynomial."""
    return sum(1 for k in range(s + 1, n // 2 + 1) if gcd(k, n) == 1)


@dataclass(frozen=True)
class GExpr:
    """g(s/n) in canonical form: gcd(s, n) = 1 and 0 <= s <= n/2."""

    s: int
    n: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def degree(self) -> int:
        return 1 if self.n <= 2 else _euler_phi(self.n) // 2

    @property
    def minpoly(self) -> IntPolynomial:
        return g_minpoly(self.n)

    @property
    def value(self) -> AlgebraicReal:
        v = self._cache.get("value")
        if v is None:
            mp = self.minpoly
            if mp.degree == 1:
                v = AlgebraicReal.rational(Fraction(-mp.coeffs[0], mp.coeffs[1]))
            else:
                v = AlgebraicReal.roots_of(mp)[_root_index(self.s, self.n)]
            self._cache["value"] = v
        return v

    @property
    def rational_arg(self) -> Fraction:
        return Fraction(self.s, self.n)

    def __str__(self) -> str:
        return f"g({self.s}/{self.n})"

    def to_json(self) -> dict:
        return {"s": self.s, "n": self.n, "minpoly": self.minpoly.to_json()}


def g_element(s: int, n: int) -> GExpr:
    s, n = _canonical(s, n)
    return GExpr(s, n)


def g_of(a) -> GExpr:
    a = Fraction(a)
    return g_element(a.numerator, a.denominator)


def in_field(K: NumberField, ge: GExpr, embedding: int | None = None) -> FieldElement | None:
    if K.degree % ge.degree:
        return None
    return contains(K, ge.value, embedding)


# ---------------------------------------------------------------------------
# identities, evaluated in Z[x]/(x^(N/2) + 1), a ring mapping onto Q(zeta_N)


class Identity(enum.Enum):
    PRODUCT = "product"
    PARITY = "parity"
    HALF_SHIFT = "half_shift"
    SQUARE = "square"
    FOUR_MINUS = "four_minus"
    ZERO_LOCUS = "zero_locus"


class _Cyc:
    """Sparse elements of Z[zeta] with zeta^half = -1, where N = 2*half."""

    def __init__(self, N: int):
        self.N = N
        self.half = N // 2

    def mono(self, e: int, c: int = 1) -> dict:
        e %= self.N
        if e >= self.half:
            return {e - self.half: -c}
        return {e: c}

    def g(self, a: Fraction) -> dict:
        e = a * self.N
        assert e.denominator == 1
        return self.add(self.mono(int(e)), self.mono(-int(e)))

    def add(self, x: dict, y: dict, sign: int = 1) -> dict:
        out = dict(x)
        for e, c in y.items():
            v = out.get(e, 0) + sign * c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for e1, c1 in x.items():
            for e2, c2 in y.items():
                out = self.add(out, self.mono(e1 + e2, c1 * c2))
        return out

    def const(self, c: int) -> dict:
        return {0: c} if c else {}

    def equal(self, x: dict, y: dict) -> bool:
        diff = self.add(x, y, -1)
        if not diff:
            return True
        dense = [0] * self.half
        for e, c in diff.items():
            dense[e] = c
        return (flint.fmpz_poly(dense) % flint.fmpz_poly.cyclotomic(self.N)).is_zero()


def _common_ring(*args: Fraction) -> _Cyc:
    N = 4
    for a in args:
        N = N * a.denominator // gcd(N, a.denominator)
    return _Cyc(N)


def check_identity(identity: Identity | str, a, b=None) -> bool:
    """Evaluate one of the cosine identities exactly and report whether both sides agree."""
    identity = Identity(identity)
    a = Fraction(a)
    if identity is Identity.PRODUCT:
        b = Fraction(b)
        R = _common_ring(a, b)
        return R.equal(R.mul(R.g(a), R.g(b)), R.add(R.g(a + b), R.g(a - b)))
    R = _common_ring(a)
    ga = R.g(a)
    if identity is Identity.PARITY:
        return R.equal(ga, R.g(-a)) and R.equal(ga, R.g(a + 1))
    if identity is Identity.HALF_SHIFT:
        return R.equal(ga, R.add({}, R.g(a + Fraction(1, 2)), -1))
    if identity is Identity.SQUARE:
        return R.equal(R.mul(ga, ga), R.add(R.const(2), R.g(2 * a)))
    if identity is Identity.FOUR_MINUS:
        shifted = R.g(a + Fraction(1, 4))
        return R.equal(R.add(R.const(4), R.mul(ga, ga), -1), R.mul(shifted, shifted))
    # ZERO_LOCUS: g(a) vanishes exactly when 4a is an odd integer
    is_zero = R.equal(ga, {})
    predicted = (4 * a).denominator == 1 and (4 * a).numerator % 2 == 1
    return is_zero == predicted


# ---------------------------------------------------------------------------
# classification of small totally positive integers


def _check_small(alpha: FieldElement) -> None:
    if not alpha.is_integral():
        raise NotIntegral("element is not an algebraic integer")
    if not alpha.is_totally_positive() or not (4 - alpha).is_totally_positive():
        raise OutOfRange("element is not strictly between 0 and 4 in every embedding")


def classify_small(alpha: FieldElement) -> tuple[int, int]:
    """(n, s) with alpha == g(s/n)^2, for an integral alpha with 0 < alpha < 4 everywhere."""
    _check_small(alpha)
    K = alpha.field
    beta = alpha - 2
    e = beta.minpoly().degree
    j = K.principal_embedding
    lo, hi = beta.enclosure(j, 64)
    with mpmath.workprec(80):
        c0 = mpmath.acos(mpmath.mpf((lo + hi).numerator) / (lo + hi).denominator / 4) / (2 * mpmath.pi)
    target = algebraic_of(beta, j)
    beta_mp = beta.minpoly()
    # beta = g(c) for some c; phi(n) >= sqrt(n / 2) caps the denominator
    cap = 8 * e * e + 8
    for n in range(1, cap + 1):
        deg = 1 if n <= 2 else _euler_phi(n) // 2
        if deg != e:
            continue
        if g_minpoly(n) != beta_mp:
            continue
        guess = int(mpmath.nint(c0 * n))
        for s in (guess, guess - 1, guess + 1):
            if not 0 <= 2 * s <= n or gcd(s, n) != 1:
                continue
            if GExpr(s, n).value.same_number(target):
                a = Fraction(s, 2 * n)
                return a.denominator, a.numerator
    raise AssertionError("no cosine value matches; the element is not of the expected shape")


def is_unit_g(u: int, v: int) -> bool:
    """Whether g(u/v) is an algebraic unit."""
    if v < 1:
        raise ValueError("v must be positive")
    if gcd(u, v) != 1:
        raise NotCoprime(f"gcd({u}, {v}) != 1")
    if v & (v - 1) == 0:
        return False
    if v % 4 == 0:
        rest = v // 4
        fac = flint.fmpz(rest).factor()
        if len(fac) == 1 and int(fac[0][0]) % 2 == 1:
            return False
    return True


# ---------------------------------------------------------------------------
# gamma_K and the three-way classification


class GammaKind(enum.Enum):
    ELEMENT = "Element"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class GammaResult:
    kind: GammaKind
    m: int | None = None
    value: FieldElement | None = None

    def to_json(self) -> dict:
        if self.kind is GammaKind.NOT_APPLICABLE:
            return {"kind": self.kind.value}
        return {"kind": self.kind.value, "m": self.m, "gamma": self.value.to_json()}


@lru_cache(maxsize=256)
def gamma(K: NumberField, embedding: int | None = None) -> GammaResult:
    """First level m where g(1/2^m) leaves K, with gamma = g(1/2^m)^2 in K."""
    prev = K(-2)  # g(1/2)
    m = 2
    while True:
        ge = g_element(1, 2 ** m)
        here = in_field(K, ge, embedding)
        if here is None:
            return GammaResult(GammaKind.ELEMENT, m, 2 + prev)
        prev = here
        m += 1


class SmallElementCase(enum.Enum):
    SQUARE = "CaseSquare"
    COMPLEMENT_UNIT_SQUARE = "CaseComplementUnitSquare"
    GAMMA_CLASS = "CaseGammaClass"


def classify_square_case(K: NumberField, alpha: FieldElement, gamma_value: FieldElement | None = None) -> SmallElementCase:
    """Split 0 < alpha < 4 into: alpha square, 4 - alpha a unit square, or both in the class of gamma."""
    alpha = K(alpha)
    _check_small(alpha)
    if sqrt_in_field(alpha) is not None:
        return SmallElementCase.SQUARE
    beta = 4 - alpha
    root = sqrt_in_field(beta)
    if root is not None:
        if not (root.is_integral() and abs(root.norm()) == 1):
            raise CaseSplitViolated(f"4 - alpha = ({root})^2 is a square but not of a unit")
        return SmallElementCase.COMPLEMENT_UNIT_SQUARE
    if gamma_value is None:
        gamma_value = gamma(K).value
    if sqrt_in_field(alpha * gamma_value) is None or sqrt_in_field(beta * gamma_value) is None:
        raise CaseSplitViolated("alpha*gamma or (4 - alpha)*gamma is not a square")
    return SmallElementCase.GAMMA_CLASS


# ---------------------------------------------------------------------------
# certified house bound for g(s/n) without its minimal polynomial


def house_upper_bound(ge: GExpr) -> Fraction:
    """A rational upper bound for the house of g(s/n), strict below 2 when n >= 3.

    Every conjugate is 2cos(2*pi*k/n) with k coprime to n; the distance from
    k/n to the nearest half-integer is at least 1/(2n) for odd n and 1/n for
    even n, so each |conjugate| <= 2cos(2*pi*delta) <= 2 - y^2 + y^4/12 with
    y = 2*pi*delta, evaluated at a lower bound for pi.
    """
    n = ge.n
    if n <= 2:
        return Fraction(2)
    delta = Fraction(1, 2 * n) if n % 2 else Fraction(1, n)
    y2 = (2 * _PI_LOWER * delta) ** 2
    return 2 - y2 + y2 * y2 / 12
