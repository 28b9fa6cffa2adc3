"""p-adic integers to finite precision, Hensel lifting and local witnesses for W^2+WX+X^2+Y^2+Z^2."""
from __future__ import annotations

from dataclasses import dataclass

import flint

from .errors import NonResidue, NotUnit, PrimeMismatch


def _check_prime(p: int) -> None:
    if p < 2 or not flint.fmpz(p).is_prime():
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class PadicInt:
    """residue + O(p^k)."""

    p: int
    k: int
    residue: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("precision must be at least 1")
        object.__setattr__(self, "residue", self.residue % self.p ** self.k)

    @classmethod
    def of(cls, p: int, k: int, value: int) -> "PadicInt":
        _check_prime(p)
        return cls(p, k, value)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def valuation(self) -> int:
        """Valuation, capped at k for residues that vanish to full precision."""
        r, v = self.residue, 0
        while v < self.k and r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def _align(self, other) -> tuple[int, int]:
        if isinstance(other, int):
            return self.k, other
        if other.p != self.p:
            raise PrimeMismatch(f"{self.p}-adic and {other.p}-adic operands")
        return min(self.k, other.k), other.residue

    def __add__(self, other):
        k, r = self._align(other)
        return PadicInt(self.p, k, self.residue + r)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.k, -self.residue)

    def __sub__(self, other):
        k, r = self._align(other)
        return PadicInt(self.p, k, self.residue - r)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        k, r = self._align(other)
        return PadicInt(self.p, k, self.residue * r)

    __rmul__ = __mul__

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotUnit(f"{self.residue} is divisible by {self.p}")
        return PadicInt(self.p, self.k, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, self.k, other)
        if other.p != self.p:
            raise PrimeMismatch(f"{self.p}-adic and {other.p}-adic operands")
        return self * other.inverse()

    def divide_by_p(self) -> "PadicInt":
        """Exact division by p; one digit of precision is lost."""
        if self.residue % self.p:
            raise NotUnit(f"{self.residue} is not divisible by {self.p}")
        if self.k == 1:
            raise ValueError("no precision left")
        return PadicInt(self.p, self.k - 1, self.residue // self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        if not isinstance(other, PadicInt):
            return NotImplemented
        return self.p == other.p and self.k == other.k and self.residue == other.residue

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.residue))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "residue": str(self.residue)}


def padic_arith(op: str, a: PadicInt, b: PadicInt | None = None) -> PadicInt:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def _sqrt_mod_p(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    return int(flint.fmpz(a).sqrtmod(p))


def hensel_sqrt(p: int, a: PadicInt) -> PadicInt:
    """r with r^2 = a to the precision of a; the smallest such residue."""
    if a.p != p:
        raise PrimeMismatch(f"expected a {p}-adic argument")
    k, N = a.k, a.modulus
    if p == 2:
        if a.residue % min(8, N) != 1 % min(8, N):
            raise NonResidue(f"{a.residue} is not 1 mod 8")
        if k <= 3:
            return PadicInt(2, k, next(x for x in range(N) if (x * x - a.residue) % N == 0))
        # a root mod 2^j (j >= 3) lifts to one mod 2^(j+1), possibly after adding 2^(j-1)
        r = 1
        for j in range(3, k):
            if (r * r - a.residue) % (1 << (j + 1)):
                r += 1 << (j - 1)
        return PadicInt(2, k, min(x % N for x in (r, -r, r + N // 2, -r + N // 2)))
    if not a.is_unit():
        raise NonResidue(f"{a.residue} is not a {p}-adic unit")
    r = _sqrt_mod_p(a.residue, p)
    if r is None:
        raise NonResidue(f"{a.residue} is not a square mod {p}")
    mod = p
    while mod < N:
        mod = min(mod * mod, N)
        r = (r - (r * r - a.residue) * pow(2 * r, -1, mod)) % mod
    return PadicInt(p, k, min(r, N - r))


def minus_one_two_squares(p: int, k: int) -> tuple[PadicInt, PadicInt]:
    """(b1, b2) with b1^2 + b2^2 = -1 mod p^k, preferring the smallest b2, then the smallest b1."""
    _check_prime(p)
    if p == 2:
        raise ValueError("p must be odd")
    for b2 in range(p):
        t = (-1 - b2 * b2) % p
        if t and pow(t, (p - 1) // 2, p) == 1:
            b1 = hensel_sqrt(p, PadicInt(p, k, -1 - b2 * b2))
            return b1, PadicInt(p, k, b2)
    raise AssertionError("-1 is a sum of two squares modulo every odd prime")


@dataclass(frozen=True)
class LocalWitness:
    p: int
    precision: int
    w: PadicInt
    x: PadicInt
    y: PadicInt
    z: PadicInt

    def value(self) -> int:
        w, x, y, z = (c.residue for c in (self.w, self.x, self.y, self.z))
        return (w * w + w * x + x * x + y * y + z * z) % self.p ** self.precision

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "precision": self.precision,
            "coords": {name: str(getattr(self, name).residue) for name in ("w", "x", "y", "z")},
        }


def _norm_form_root(alpha: int, k: int) -> int:
    """Smallest b mod 2^k with b^2 + b + 1 = alpha, for odd alpha.

    Both residues mod 2 are simple roots (the derivative 2b + 1 is odd), so
    Newton's iteration from 0 converges; the other root is -1 - b.
    """
    if alpha % 2 == 0:
        raise NonResidue("b^2 + b + 1 is always odd")
    N = 1 << k
    c = 1 - alpha
    b, mod = 0, 2
    while mod < N:
        mod = min(mod * mod, N)
        b = (b - (b * b + b + c) * pow(2 * b + 1, -1, mod)) % mod
    return min(b % N, (-1 - b) % N)


def local_represent(p: int, alpha: PadicInt) -> LocalWitness:
    """(w, x, y, z) with w^2 + wx + x^2 + y^2 + z^2 = alpha to the precision of alpha.

    Odd p: w = 0 and alpha = ((alpha+1)/2)^2 + (b1(alpha-1)/2)^2 + (b2(alpha-1)/2)^2
    with b1^2 + b2^2 = -1. p = 2: the unit alpha is w^2 + wx + x^2 with w = 1, and
    an even alpha is (alpha - 1) + 1^2. No step divides by 2 when p = 2.
    """
    if alpha.p != p:
        raise PrimeMismatch(f"expected a {p}-adic argument")
    k, a = alpha.k, alpha.residue
    zero = PadicInt(p, k, 0)
    if p != 2:
        b1, b2 = minus_one_two_squares(p, k)
        half = pow(2, -1, p ** k)
        x = PadicInt(p, k, (a + 1) * half)
        y = b1 * ((a - 1) * half)
        z = b2 * ((a - 1) * half)
        return LocalWitness(p, k, zero, x, y, z)
    one = PadicInt(2, k, 1)
    if a % 2 == 1:
        return LocalWitness(2, k, one, PadicInt(2, k, _norm_form_root(a, k)), zero, zero)
    return LocalWitness(2, k, one, PadicInt(2, k, _norm_form_root(a - 1, k)), one, zero)
