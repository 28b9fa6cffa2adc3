"""Explicit constructions: a prime sequence, squarefree triples, a field tower and basic open sets."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

import flint
from sympy.ntheory.modular import crt

from .cyclo import GExpr, g_element, house_upper_bound
from .errors import IndexOutOfRange, InvalidSequence, NotTotallyReal
from .exactnum import AlgebraicReal, IntPolynomial, NumberField, contains, count_real_roots
from .units import is_squarefree


def _is_prime(n: int) -> bool:
    # FLINT proves primality (no probabilistic answers) at every size
    return bool(flint.fmpz(n).is_prime())


@dataclass(frozen=True)
class PrimeSequence:
    """Primes q_1 = 7 < q_2 < ..., all 3 mod 4, with gcd(q_i - 1, q_j - 1) = 2 for i != j."""

    primes: tuple[int, ...] = (7,)

    def __post_init__(self):
        qs = self.primes
        if not qs or qs[0] != 7:
            raise InvalidSequence("the sequence starts at 7")
        for i, q in enumerate(qs):
            if q % 4 != 3 or not _is_prime(q):
                raise InvalidSequence(f"{q} is not a prime congruent to 3 mod 4")
            if i and q <= qs[i - 1]:
                raise InvalidSequence("primes must increase")
            for p in qs[:i]:
                if gcd(q - 1, p - 1) != 2:
                    raise InvalidSequence(f"gcd({p - 1}, {q - 1}) != 2")

    def __len__(self) -> int:
        return len(self.primes)

    def extended(self) -> "PrimeSequence":
        return PrimeSequence(self.primes + (extend_prime_sequence(self),))


def _odd_prime_factors(n: int) -> list[int]:
    return sorted(int(p) for p, _ in flint.fmpz(n).factor() if int(p) != 2)


def extend_prime_sequence(seq: PrimeSequence) -> int:
    """Smallest prime q > max(seq) with q = 3 mod 4 and q = 2 mod every odd prime dividing prod(q_i - 1)."""
    odd = sorted(set().union(*(_odd_prime_factors(q - 1) for q in seq.primes)))
    moduli = [4] + odd
    residue, modulus = crt(moduli, [3] + [2] * len(odd))
    residue, modulus = int(residue), int(modulus)
    start = max(seq.primes) + 1
    x = residue + ((start - residue + modulus - 1) // modulus) * modulus
    while not _is_prime(x):
        x += modulus
    return x


def prime_sequence(count: int) -> PrimeSequence:
    if count < 1:
        raise ValueError("count must be at least 1")
    seq = PrimeSequence()
    while len(seq) < count:
        seq = seq.extended()
    return seq


def squarefree_triple_scan(limit: int) -> list[int]:
    """n <= limit with n = 1 mod 12 and n(n+1), 3n(3n+4), (3n+3)(3n+4) all squarefree."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    out = []
    for n in range(1, limit + 1, 12):
        if all(is_squarefree(v) for v in (n * (n + 1), 3 * n * (3 * n + 4), (3 * n + 3) * (3 * n + 4))):
            out.append(n)
    return out


@dataclass(frozen=True)
class TowerStage:
    index: int
    primes: tuple[int, ...]
    generators: tuple[IntPolynomial, ...]
    base_approximation: tuple[int, ...]
    relative_degree: int

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "primes": list(self.primes),
            "generators": [g.to_json() for g in self.generators],
            "generator_degrees": [g.degree for g in self.generators],
            "base_approximation": list(self.base_approximation),
            "relative_degree": self.relative_degree,
        }


def tower_stage(i: int, seq: PrimeSequence, base_bound: int = 2, *, with_minpolys: bool = True) -> TowerStage:
    """Stage i: the base (square roots of squarefree d <= base_bound) adjoined g(1/q_j) for j <= i."""
    if i < 0 or i > len(seq):
        raise IndexOutOfRange(f"stage {i} needs {i} primes, sequence has {len(seq)}")
    if base_bound < 2:
        raise ValueError("base_bound must be at least 2")
    qs = seq.primes[:i]
    degrees = [(q - 1) // 2 for q in qs]
    for a in range(len(degrees)):
        for b in range(a):
            if gcd(degrees[a], degrees[b]) != 1:
                raise AssertionError(f"generator degrees {degrees[b]} and {degrees[a]} are not coprime")
    gens = tuple(g_element(1, q).minpoly for q in qs) if with_minpolys else ()
    for g, deg in zip(gens, degrees):
        if g.degree != deg:
            raise AssertionError(f"g(1/q) has degree {g.degree}, expected {deg}")
    base = tuple(d for d in range(2, base_bound + 1) if is_squarefree(d))
    return TowerStage(i, qs, gens, base, prod(degrees))


def house_lt2_witnesses(count: int, seq: PrimeSequence) -> list[GExpr]:
    """g(1/q_j) for the first ``count`` primes, each certified to have house below 2."""
    if count < 0 or count > len(seq):
        raise IndexOutOfRange(f"{count} witnesses requested from {len(seq)} primes")
    out = []
    for q in seq.primes[:count]:
        ge = g_element(1, q)
        if not house_upper_bound(ge) < 2:
            raise AssertionError(f"house of {ge} not certified below 2")
        out.append(ge)
    if len({ge.degree for ge in out}) != len(out):
        raise AssertionError("witness degrees are not pairwise distinct")
    return out


@dataclass(frozen=True)
class BasicOpen:
    """Subfields containing every element of A and no element of B."""

    A: tuple[AlgebraicReal, ...] = ()
    B: tuple[AlgebraicReal, ...] = ()

    @property
    def is_empty(self) -> bool:
        return any(a.same_number(b) for a in self.A for b in self.B)


def _check_totally_real(x: AlgebraicReal) -> None:
    if x.degree > 1 and count_real_roots(x.minpoly) != x.degree:
        raise NotTotallyReal(f"{x} has non-real conjugates")


def basic_open_membership(K: NumberField, open_set: BasicOpen, embedding: int | None = None) -> bool:
    for x in open_set.A + open_set.B:
        _check_totally_real(x)
    if any(contains(K, a, embedding) is None for a in open_set.A):
        return False
    return all(contains(K, b, embedding) is None for b in open_set.B)

