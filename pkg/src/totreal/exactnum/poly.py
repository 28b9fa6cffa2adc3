"""Integer polynomials, Sturm sequences and real root isolation.

Polynomials are stored as tuples of Python ints in ascending degree order.
Heavy lifting that is not part of root isolation (factoring, gcd) is handed
to FLINT through :meth:`IntPolynomial.to_flint`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

Number = int | Fraction


class IntPolynomial:
    """Immutable polynomial with integer coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def from_flint(cls, p) -> "IntPolynomial":
        return cls(int(c) for c in p.coeffs())

    @classmethod
    def from_rational(cls, coeffs: Sequence[Number]) -> "IntPolynomial":
        """Clear denominators and content; leading coefficient made positive."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // _gcd(den, c.denominator)
        return cls(int(c * den) for c in fr).primitive()

    def to_flint(self):
        return flint.fmpz_poly(list(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number) -> int:
        if isinstance(x, Fraction):
            return _sign(homogeneous_eval(self.coeffs, x.numerator, x.denominator))
        return _sign(self(int(x)))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def shift(self, c: int) -> "IntPolynomial":
        """Return p(x + c)."""
        out = [0] * len(self.coeffs)
        for a in reversed(self.coeffs):
            # out = out * (x + c) + a
            nxt = [0] * len(out)
            for i in range(len(out) - 1):
                nxt[i + 1] += out[i]
                nxt[i] += out[i] * c
            nxt[0] += a
            out = nxt
        return IntPolynomial(out)

    def negate_var(self) -> "IntPolynomial":
        """Return p(-x)."""
        return IntPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def homogeneous_eval(coeffs: Sequence[int], a: int, b: int) -> int:
    """Return b^deg * p(a/b) exactly; for b > 0 it has the sign of p(a/b)."""
    n = len(coeffs) - 1
    if n < 0:
        return 0
    acc = coeffs[n]
    bp = 1
    for i in range(n - 1, -1, -1):
        bp *= b
        acc = acc * a + coeffs[i] * bp
    return acc


# ---------------------------------------------------------------------------
# Sturm sequences


def _neg_prem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """A positive multiple of -(a mod b), made primitive."""
    r = list(a.coeffs)
    lb = b.leading
    db = b.degree
    delta = a.degree - db
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [x * lb for x in r]
        if c:
            off = k - db
            for j, bc in enumerate(b.coeffs):
                r[off + j] -= c * bc
        r.pop()
    # r = lb^(delta+1) * (a mod b); flip so the multiplier is positive
    if lb < 0 and (delta + 1) % 2 == 1:
        r = [-x for x in r]
    rem = IntPolynomial(-x for x in r)
    if rem.is_zero():
        return rem
    g = rem.content()
    return IntPolynomial(x // g for x in rem.coeffs)


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = _neg_prem(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return seq


def _variations(signs: Iterable[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq: Sequence[IntPolynomial], x: Number) -> int:
    return _variations(q.sign_at(x) for q in seq)


def _var_at_inf(seq: Sequence[IntPolynomial], positive: bool) -> int:
    signs = []
    for q in seq:
        s = _sign(q.leading)
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_real_roots(p: IntPolynomial, lo: Number | None = None, hi: Number | None = None,
                     seq: Sequence[IntPolynomial] | None = None) -> int:
    """Number of distinct real roots of squarefree ``p`` in (lo, hi]; ``None`` means infinite."""
    if seq is None:
        seq = sturm_sequence(p)
    va = _var_at_inf(seq, False) if lo is None else _var_at(seq, lo)
    vb = _var_at_inf(seq, True) if hi is None else _var_at(seq, hi)
    return va - vb


def root_bound(p: IntPolynomial) -> int:
    """A power of two strictly exceeding |r| for every complex root r (Cauchy)."""
    lc = abs(p.leading)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    bound = 1 + Fraction(m, lc)
    b = 1
    while b <= bound:
        b *= 2
    return b


def isolate_real_roots(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint dyadic intervals, one per real root of squarefree ``p``, ascending.

    For a rational root hit exactly by a bisection point the interval is
    degenerate ``(r, r)``. Otherwise ``p`` changes sign strictly between the
    endpoints, so later refinement needs only sign evaluations.
    """
    if p.degree < 1:
        return []
    if p.degree == 1:
        r = Fraction(-p.coeffs[0], p.coeffs[1])
        return [(r, r)]
    seq = sturm_sequence(p)
    b = Fraction(root_bound(p))
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b, count_real_roots(p, -b, b, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and p.sign_at(hi) != 0 and p.sign_at(lo) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if p.sign_at(mid) == 0:
            out.append((mid, mid))
            # shrink neighbours off the exact root
            eps = (hi - lo) / 4
            while count_real_roots(p, mid - eps, mid, seq) > 1 or count_real_roots(p, mid, mid + eps, seq) > 0:
                eps /= 2
            left = count_real_roots(p, lo, mid - eps, seq)
            right = count_real_roots(p, mid + eps, hi, seq)
            stack.append((lo, mid - eps, left))
            stack.append((mid + eps, hi, right))
            continue
        stack.append((mid, hi, count_real_roots(p, mid, hi, seq)))
        stack.append((lo, mid, count_real_roots(p, lo, mid, seq)))
    out.sort()
    return out


def bisect_root(p: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Halve a sign-change interval of ``p`` until it is at most ``width`` wide."""
    if lo == hi:
        return lo, hi
    slo = p.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _dyadic(x: Fraction) -> tuple[int, int]:
    """(M, k) with x = M / 2**k, for dyadic x."""
    k = x.denominator.bit_length() - 1
    return x.numerator, k


def refine_root(p: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a dyadic sign-change interval of ``p`` to width at most ``width``.

    Newton steps propose a tiny bracket around the predicted root which is
    accepted only if ``p`` changes sign across it; otherwise one bisection
    step is taken and the bracket radius for the next attempt is widened.
    Every accepted interval still brackets a sign change inside the previous
    one, so the isolated root never changes.
    """
    if lo == hi or hi - lo <= width:
        return lo, hi
    dp = p.derivative()
    slo = p.sign_at(lo)
    slack = 4
    while hi - lo > width:
        w = hi - lo
        wbits = max((w.denominator.bit_length() - w.numerator.bit_length()), 1)
        step_bits = 2 * wbits - slack
        mid = (lo + hi) / 2
        if step_bits > wbits + 2:
            M, k = _dyadic(mid)
            hp = homogeneous_eval(p.coeffs, M, 1 << k)
            if hp == 0:
                return mid, mid
            hdp = homogeneous_eval(dp.coeffs, M, 1 << k)
            if hdp != 0:
                K = step_bits + 2
                if K > k:
                    X = (M << (K - k)) - (hp << K) // (hdp << k)
                else:
                    X = (M >> (k - K)) - (hp << K) // (hdp << k)
                delta = Fraction(1, 1 << step_bits)
                if delta * 2 < width:
                    delta = width / 2
                x = Fraction(X, 1 << K)
                a, b = max(lo, x - delta), min(hi, x + delta)
                if a < b:
                    sa, sb = p.sign_at(a), p.sign_at(b)
                    if sa == 0:
                        return a, a
                    if sb == 0:
                        return b, b
                    if sa != sb:
                        lo, hi = a, b
                        slack = max(4, slack - 1)
                        continue
                slack += 4
        s = p.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
