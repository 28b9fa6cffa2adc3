from itertools import combinations
from math import gcd

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from totreal.constructions import (
    BasicOpen, PrimeSequence, basic_open_membership, extend_prime_sequence, house_lt2_witnesses,
    prime_sequence, squarefree_triple_scan, tower_stage,
)
from totreal.cyclo import g_element
from totreal.errors import IndexOutOfRange, InvalidSequence, NotTotallyReal
from totreal.exactnum import AlgebraicReal, IntPolynomial, field_create, rationals

from oracles import squarefree_by_division

SQRT2 = field_create([-2, 0, 1])
SQRT6 = field_create([-6, 0, 1])
ROOT2 = AlgebraicReal.roots_of(IntPolynomial([-2, 0, 1]))[1]
ROOT3 = AlgebraicReal.roots_of(IntPolynomial([-3, 0, 1]))[1]
ROOT6 = AlgebraicReal.roots_of(IntPolynomial([-6, 0, 1]))[1]
GOLDEN_ROOT = AlgebraicReal.roots_of(IntPolynomial([-1, -1, 1]))[1]


def brute_force_next(primes):
    """Scan every integer above max(primes) for the defining congruences."""
    odd = {p for q in primes for p in sympy.primefactors(q - 1) if p != 2}
    x = max(primes) + 1
    while not (x % 4 == 3 and all(x % p == 2 for p in odd) and sympy.isprime(x)):
        x += 1
    return x


# -- prime sequence ------------------------------------------------------------

def test_extension_examples():
    assert extend_prime_sequence(PrimeSequence((7,))) == 11
    assert extend_prime_sequence(PrimeSequence((7, 11))) == 47
    assert prime_sequence(3).primes == (7, 11, 47)


def test_extension_matches_brute_force():
    # plain scanning is feasible up to 298427, the fifth term
    seq = PrimeSequence()
    for _ in range(4):
        assert extend_prime_sequence(seq) == brute_force_next(seq.primes)
        seq = seq.extended()


def test_generated_sequence_invariants():
    seq = prime_sequence(7)
    assert seq.primes[0] == 7
    assert list(seq.primes) == sorted(set(seq.primes))
    for q in seq.primes:
        assert q % 4 == 3 and sympy.isprime(q)
    for p, q in combinations(seq.primes, 2):
        assert gcd(p - 1, q - 1) == 2


def test_extension_deterministic():
    seq = prime_sequence(4)
    assert extend_prime_sequence(seq) == extend_prime_sequence(seq) == extend_prime_sequence(PrimeSequence(seq.primes))


@pytest.mark.parametrize("primes", [(), (11,), (7, 13), (7, 19), (7, 11, 11), (7, 23, 11), (7, 9)])
def test_invalid_sequences(primes):
    with pytest.raises(InvalidSequence):
        PrimeSequence(primes)


def test_prime_sequence_count():
    with pytest.raises(ValueError):
        prime_sequence(0)


# -- squarefree triples --------------------------------------------------------

def test_scan_examples():
    found = squarefree_triple_scan(40)
    assert 1 in found and 13 in found and 25 not in found
    with pytest.raises(ValueError):
        squarefree_triple_scan(0)


def test_scan_matches_division_oracle():
    limit = 3000
    expected = [n for n in range(1, limit + 1) if n % 12 == 1 and all(
        squarefree_by_division(v) for v in (n * (n + 1), 3 * n * (3 * n + 4), (3 * n + 3) * (3 * n + 4)))]
    assert squarefree_triple_scan(limit) == expected
    assert expected  # the family is nonempty at this scale


# -- tower ---------------------------------------------------------------------

def test_tower_examples():
    seq = prime_sequence(3)
    s0 = tower_stage(0, seq)
    assert s0.generators == () and s0.relative_degree == 1
    s1 = tower_stage(1, seq)
    assert s1.generators == (IntPolynomial([-1, -2, 1, 1]),) and s1.relative_degree == 3
    assert tower_stage(2, seq).relative_degree == 15
    assert tower_stage(3, seq, with_minpolys=False).relative_degree == 3 * 5 * 23
    assert tower_stage(1, seq, base_bound=10).base_approximation == (2, 3, 5, 6, 7, 10)


def test_tower_errors():
    seq = prime_sequence(2)
    with pytest.raises(IndexOutOfRange):
        tower_stage(3, seq)
    with pytest.raises(IndexOutOfRange):
        tower_stage(-1, seq)
    with pytest.raises(ValueError):
        tower_stage(1, seq, base_bound=1)


def test_tower_generators_are_cosines():
    seq = prime_sequence(3)
    stage = tower_stage(2, seq)
    for q, g in zip(stage.primes, stage.generators):
        assert g == g_element(1, q).minpoly
        assert g.degree == (q - 1) // 2


# -- house witnesses -----------------------------------------------------------

def test_witness_examples():
    seq = prime_sequence(3)
    assert house_lt2_witnesses(0, seq) == []
    ws = house_lt2_witnesses(3, seq)
    assert [str(w) for w in ws] == ["g(1/7)", "g(1/11)", "g(1/47)"]
    assert [w.degree for w in ws] == [3, 5, 23]
    with pytest.raises(IndexOutOfRange):
        house_lt2_witnesses(4, seq)


def test_witnesses_inside_open_interval():
    # the conjugates of g(1/q) are 2cos(2 pi k/q), 1 <= k <= (q-1)/2: all roots, all inside (-2, 2)
    for w in house_lt2_witnesses(4, prime_sequence(4)):
        q = w.n
        assert w.minpoly.coeffs[-1] == 1 and w.degree == (q - 1) // 2
        with mpmath.workdps(300):
            coeffs = list(reversed(w.minpoly.coeffs))
            for k in range(1, (q + 1) // 2):
                x = 2 * mpmath.cos(2 * mpmath.pi * k / q)
                assert abs(x) < 2
                assert abs(mpmath.polyval(coeffs, x)) < mpmath.mpf(10) ** -200


# -- basic open sets -----------------------------------------------------------

def test_membership_examples():
    assert basic_open_membership(SQRT2, BasicOpen((ROOT2,), (ROOT3,)))
    assert not basic_open_membership(SQRT2, BasicOpen((ROOT3,), ()))
    for K in (rationals(), SQRT2, SQRT6):
        assert basic_open_membership(K, BasicOpen())
    assert BasicOpen((ROOT2,), (ROOT2,)).is_empty
    assert not basic_open_membership(SQRT2, BasicOpen((ROOT2,), (ROOT2,)))


def test_membership_rejects_non_totally_real():
    cube_root = AlgebraicReal.roots_of(IntPolynomial([-2, 0, 0, 1]))[0]
    with pytest.raises(NotTotallyReal):
        basic_open_membership(SQRT2, BasicOpen((cube_root,), ()))


POOL = [ROOT2, ROOT3, ROOT6, GOLDEN_ROOT, AlgebraicReal.roots_of(IntPolynomial([-1, -2, 1, 1]))[2]]
subsets = st.lists(st.sampled_from(range(len(POOL))), unique=True, max_size=3)


@given(st.sampled_from([rationals(), SQRT2, SQRT6]), subsets, subsets, subsets)
@settings(max_examples=40, deadline=None)
def test_membership_monotonicity(K, a, b, extra):
    A = tuple(POOL[i] for i in a)
    B = tuple(POOL[i] for i in b)
    E = tuple(POOL[i] for i in extra)
    base = basic_open_membership(K, BasicOpen(A, B))
    # enlarging A can only shrink the set; shrinking B can only grow it
    if basic_open_membership(K, BasicOpen(A + E, B)):
        assert base
    if base:
        assert basic_open_membership(K, BasicOpen(A, B[1:]))
