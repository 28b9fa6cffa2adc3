"""End-to-end acceptance checks, one test (or parametrized family) per criterion."""
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd, isqrt

import flint
import pytest

from totreal import cyclo, padics, units
from totreal.constructions import house_lt2_witnesses, prime_sequence, squarefree_triple_scan
from totreal.cyclo import Identity, SmallElementCase
from totreal.errors import BoundViolated, CaseSplitViolated
from totreal.exactnum import field_create, rationals
from totreal.qlattice import lattice_create, random_positive_definite, represent, represented_unit_classes

from oracles import box_search, chebyshev_g, pell_brute_force, squarefree_by_division

RATIONALS_60 = [Fraction(s, n) for n in range(1, 61) for s in range(n) if gcd(s, n) == 1]


# 1 ---------------------------------------------------------------------------
@pytest.mark.acceptance(1)
def test_identity_suite_exhaustive():
    start = time.perf_counter()
    unary = [i for i in Identity if i is not Identity.PRODUCT]
    for a in RATIONALS_60:
        for ident in unary:
            assert cyclo.check_identity(ident, a), (ident, a)
    for a in RATIONALS_60:
        for b in RATIONALS_60:
            assert cyclo.check_identity(Identity.PRODUCT, a, b), (a, b)
    assert time.perf_counter() - start < 60


# 2 ---------------------------------------------------------------------------
def _same_square(a: Fraction, b: Fraction) -> bool:
    # g(a)^2 = 2 + g(2a), and g is injective on [0, 1/2] modulo the symmetries a -> -a, a + 1
    d, s = (2 * a - 2 * b) % 1, (2 * a + 2 * b) % 1
    return d == 0 or s == 0


@pytest.mark.acceptance(2)
def test_classifier_round_trip():
    checked = 0
    for n in range(3, 61):  # n <= 2 gives g = +-2 only
        K = field_create(cyclo.g_minpoly(n))
        theta = K.gen  # g(1/n), the largest conjugate, sits at the principal embedding
        for s in range(n):
            if gcd(s, n) != 1:
                continue
            a = Fraction(s, n)
            if (4 * a).denominator == 1 or (2 * a).denominator == 1:
                continue  # g(a) in {0, 2, -2}: alpha outside (0, 4)
            alpha = chebyshev_g(theta, s) ** 2
            n2, s2 = cyclo.classify_small(alpha)
            assert gcd(s2, n2) == 1
            assert _same_square(Fraction(s2, n2), a), (s, n, s2, n2)
            checked += 1
    assert checked > 1000


# 3 ---------------------------------------------------------------------------
@pytest.mark.acceptance(3)
def test_unit_criterion_against_minpoly_oracle():
    for v in range(1, 101):
        # FLINT's minimal polynomial of 2cos(2 pi / v) serves every u coprime to v
        mp = [int(c) for c in flint.fmpz_poly.cos_minpoly(v).coeffs()]
        oracle = abs(mp[0]) == 1 and abs(mp[-1]) == 1
        for u in range(v):
            if gcd(u, v) == 1:
                assert cyclo.is_unit_g(u, v) == oracle, (u, v)


# 4 ---------------------------------------------------------------------------
CASE_FIELDS = {"Q": [0, 1], "Q(sqrt2)": [-2, 0, 1], "Q(sqrt3)": [-3, 0, 1], "Q(sqrt5)": [-1, -1, 1]}


@pytest.mark.acceptance(4)
@pytest.mark.parametrize("name", CASE_FIELDS)
def test_square_case_split_never_violated(name):
    K = field_create(CASE_FIELDS[name])
    seen = set()
    cases = set()
    for n in range(1, 61):
        for s in range(n):
            if gcd(s, n) != 1:
                continue
            a = Fraction(s, n)
            if (4 * a).denominator == 1 or (2 * a).denominator == 1:
                continue
            double = cyclo.g_of(2 * a)  # alpha = 2 + g(2a)
            if double.degree > K.degree or (double.s, double.n) in seen:
                continue
            seen.add((double.s, double.n))
            x = cyclo.in_field(K, double)
            if x is None:
                continue
            try:
                cases.add(cyclo.classify_square_case(K, 2 + x))
            except CaseSplitViolated as exc:  # pragma: no cover - reported as a failure
                pytest.fail(f"{name}, alpha = g({a})^2: {exc}")
    assert SmallElementCase.SQUARE in cases


# 5 ---------------------------------------------------------------------------
@pytest.mark.acceptance(5)
def test_gamma_values():
    Q = rationals()
    r = cyclo.gamma(Q)
    assert (r.m, r.value) == (3, Q(2))
    K2 = field_create([-2, 0, 1])
    r = cyclo.gamma(K2)
    assert (r.m, r.value) == (4, 2 + K2.gen)
    K3 = field_create([-3, 0, 1])
    r = cyclo.gamma(K3)
    assert (r.m, r.value) == (3, K3(2))


# 6 ---------------------------------------------------------------------------
@pytest.mark.acceptance(6)
def test_fundamental_units_against_brute_force():
    start = time.perf_counter()
    for D in range(2, 101):
        if not units.is_squarefree(D):
            continue
        eps, norm = units.fundamental_unit(D)
        a, b = eps.coords
        if D % 4 == 1:
            t, u = 2 * a + b, b  # eps = (t + u sqrt D) / 2
        else:
            t, u = 2 * a, 2 * b
        assert (t, u, norm) == pell_brute_force(D), D
    assert time.perf_counter() - start < 30


# 7 ---------------------------------------------------------------------------
@pytest.mark.acceptance(7)
@pytest.mark.slow
@pytest.mark.parametrize("D", [3, 6, 7])
@pytest.mark.parametrize("rank", [1, 2, 3])
def test_unit_class_bound_battery(D, rank):
    report = units.tp_unit_square_classes(D)
    assert report.class_count == 2
    rng = random.Random(1000 * D + rank)
    applicable = None
    for trial in range(200):
        L = random_positive_definite(report.field, rank, 10, rng)
        try:
            cov = represented_unit_classes(L, report, bound_n_applicable=applicable)
        except BoundViolated as exc:  # pragma: no cover - reported as a failure
            pytest.fail(f"trial {trial}: {exc}")
        applicable = cov.bound_n_applicable
        assert cov.count <= (1 if rank == 1 else 2 * rank - 2)
        if cov.bound_n_applicable:
            assert cov.count <= rank


# 8 ---------------------------------------------------------------------------
@pytest.mark.acceptance(8)
def test_three_squares_universal_up_to_trace_20():
    K = field_create([-1, -1, 1])  # theta = (1 + sqrt5) / 2
    L = lattice_create(K, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    targets = []
    for x in range(1, 21):  # alpha = (x + y sqrt5) / 2, trace x
        for y in range(-x, x + 1):
            if (x - y) % 2 == 0 and 5 * y * y < x * x:
                targets.append(K.element([Fraction(x - y, 2), y]))
    assert len(targets) > 50
    for alpha in targets:
        assert alpha.is_totally_positive() and alpha.trace() <= 20
        w = represent(L, alpha)
        assert w is not None, alpha
        assert L.q(w.coords) == alpha


# 9 ---------------------------------------------------------------------------
def _completeness_cases():
    Q = rationals()
    K = field_create([-2, 0, 1])
    forms_q = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, Fraction(1, 2), 0], [Fraction(1, 2), 1, 0], [0, 0, 2]],
        [[2, 1, 0], [1, 3, 1], [0, 1, 5]],
    ]
    cases = []
    for i, alpha in enumerate([1, 2, 3, 5, 6, 7, 9, 11, 14, 15, 17, 20, 23, 25, 28, 30, 4, 8, 12, 13, 19, 21, 22, 27, 29]):
        cases.append((Q, forms_q[i % 3], Q(alpha)))
    s2 = K.gen
    forms_k = [
        [[1, 0], [0, 1]],
        [[1, Fraction(1, 2)], [Fraction(1, 2), 1]],
        [[2 + s2, 1], [1, 3]],
        [[1, 0], [0, 3 + s2]],
    ]
    targets_k = []
    for a in range(1, 16):
        for b in range(-a, a + 1):
            alpha = a + b * s2
            if alpha.is_totally_positive():
                targets_k.append(alpha)
    rng = random.Random(9)
    for i, alpha in enumerate(sorted(rng.sample(targets_k, 25), key=lambda e: e.coords)):
        cases.append((K, forms_k[i % 4], alpha))
    return cases


@pytest.mark.acceptance(9)
@pytest.mark.parametrize("K, gram, alpha", _completeness_cases())
def test_represent_matches_box_search(K, gram, alpha):
    L = lattice_create(K, gram)
    assert alpha.trace() <= 30
    w = represent(L, alpha)
    solutions = box_search(L, alpha)
    assert (w is not None) == bool(solutions)
    if w is not None:
        assert L.q(w.coords) == alpha
        assert tuple(w.vector) in solutions


# 10 --------------------------------------------------------------------------
@pytest.mark.acceptance(10)
def test_prime_sequence():
    qs = prime_sequence(6).primes
    assert qs[:3] == (7, 11, 47)
    for i, q in enumerate(qs):
        assert q % 4 == 3 and flint.fmpz(q).is_prime()
        for p in qs[:i]:
            assert gcd(q - 1, p - 1) == 2


# 11 --------------------------------------------------------------------------
@pytest.mark.acceptance(11)
def test_squarefree_triples():
    found = squarefree_triple_scan(10_000)
    expected = [n for n in range(1, 10_001, 12)
                if all(squarefree_by_division(v) for v in (n * (n + 1), 3 * n * (3 * n + 4), (3 * n + 3) * (3 * n + 4)))]
    assert found == expected
    assert 1 in found and 13 in found and 25 not in found


# 12 --------------------------------------------------------------------------
@pytest.mark.acceptance(12)
def test_house_below_two_witnesses():
    seq = prime_sequence(6)
    ws = house_lt2_witnesses(6, seq)
    assert [(w.s, w.n) for w in ws] == [(1, q) for q in seq.primes]
    assert len({w.degree for w in ws}) == 6
    assert [w.degree for w in ws] == [(q - 1) // 2 for q in seq.primes]
    for w in ws:
        assert cyclo.house_upper_bound(w) < 2
    # exact confirmation where the minimal polynomial is small enough to write down
    for w in ws[:3]:
        K = field_create(w.minpoly)
        assert w.minpoly.is_monic()
        assert K.gen.house_compare(2).value == "LT"


# 13 --------------------------------------------------------------------------
@pytest.mark.acceptance(13)
def test_local_witnesses_exhaustive():
    start = time.perf_counter()
    for p in (2, 3, 5, 7):
        for a in range(p ** 3):
            w = padics.local_represent(p, padics.PadicInt(p, 8, a))
            W, X, Y, Z = (c.residue for c in (w.w, w.x, w.y, w.z))
            assert (W * W + W * X + X * X + Y * Y + Z * Z - a) % p ** 8 == 0, (p, a)
    assert time.perf_counter() - start < 10


# 14 --------------------------------------------------------------------------
CLI_COMMANDS = [
    ["field-info", "--field", "x^3+x^2-2x-1"],
    ["g", "--s", "3", "--n", "11"],
    ["classify-small", "--field", "x^2-x-1", "--alpha", "2,-1", "--case"],
    ["gamma", "--field", "x^2-2"],
    ["units", "--D", "6"],
    ["represent", "--field", "x^2-2", "--gram", "[[1,0],[0,1]]", "--alpha", "3,2"],
    ["verify-bound", "--D", "7", "--rank", "2", "--trials", "5", "--seed", "42"],
    ["q42-search", "--D", "3", "--rank", "2", "--bound", "3", "--limit", "20", "--top", "2"],
    ["prime-seq", "--count", "5"],
    ["squarefree-scan", "--limit", "500"],
    ["tower", "--stages", "2"],
    ["house", "--field", "x^2-2", "--alpha", "1,1", "--r", "5/2"],
    ["member", "--field", "x^2-2", "--in", "g(1/8)", "--out", "g(1/12)"],
    ["local-represent", "--p", "2", "--alpha", "6", "--precision", "4"],
]


@pytest.mark.acceptance(14)
@pytest.mark.parametrize("argv", CLI_COMMANDS, ids=lambda a: a[0])
def test_cli_byte_identical_reruns(argv):
    outs = [subprocess.run([sys.executable, "-m", "totreal", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1]
    assert outs[0]
