"""Exit criteria.  Each test records one PASS/FAIL line in the terminal summary."""

import time
from fractions import Fraction

import pytest

from oddpart import bounds as B
from oddpart import identities as I
from oddpart import partitions as P
from oddpart.series import RationalFunction

QUARTER = Fraction(1, 4)


def fresh_caches():
    P._histogram.cache_clear()
    P._q_values.cache_clear()
    I.tables.cache_clear()
    I.fib.cache_clear()


@pytest.fixture
def timer():
    fresh_caches()
    start = time.perf_counter()
    return lambda: time.perf_counter() - start


# -- 1. exact constants at x = 1/4 ----------------------------------------------

CONSTANTS = [
    ("B_1 = 15/11", lambda: B.upper_sequence(QUARTER, 1).constant, Fraction(15, 11)),
    ("B_2 = 13/11", lambda: B.upper_sequence(QUARTER, 2).constant, Fraction(13, 11)),
    ("B_3 = 141701/126225", lambda: B.upper_sequence(QUARTER, 3).constant, Fraction(141701, 126225)),
    ("prime-power lower, P={3} = 69983/69615", lambda: B.prime_power_lower(QUARTER, (3,)).constant,
     Fraction(69983, 69615)),
    ("odd-divisor upper, P={3} = 1347596/3828825", lambda: B.odd_divisor_sum_upper(QUARTER, (3,)).constant,
     Fraction(1347596, 3828825)),
    ("R_4 = 9364/6875", lambda: B.window_upper(QUARTER, 4).constant, Fraction(9364, 6875)),
    ("R_5 = 46754/34375", lambda: B.window_upper(QUARTER, 5).constant, Fraction(46754, 34375)),
    ("R_6 = 233506/171875", lambda: B.window_upper(QUARTER, 6).constant, Fraction(233506, 171875)),
    ("2q-Q1 window k=5 = 81239/68750", lambda: B.two_weight_upper(QUARTER, 5).constant, Fraction(81239, 68750)),
    ("2q-Q1 window k=6 = 406118/171875", lambda: B.two_weight_upper(QUARTER, 6).constant, Fraction(406118, 171875)),
    ("3q-2Q1-Q2 window k=6 = 88561442/78890625", lambda: B.three_weight_upper(QUARTER, 6).constant,
     Fraction(88561442, 78890625)),
]


@pytest.mark.parametrize("label, compute, expected", CONSTANTS, ids=[c[0] for c in CONSTANTS])
def test_c1_constant(label, compute, expected, criterion, timer):
    criterion(f"1  {label}")
    value = compute()
    assert timer() < 5
    assert value == expected, f"computed {value}"


R_NUMERATORS = {
    4: (1, 4, 5, 0, -6, -3),
    5: (1, 5, 9, 5, -6, -15, 3, 6),
    6: (1, 6, 14, 14, -1, -21, -36, 33, 30),
}


@pytest.mark.parametrize("k", [4, 5, 6])
def test_c1_R_numerator(k, criterion, timer):
    criterion(f"1  R_{k} numerator polynomial")
    f = B.window_rf(k)
    assert timer() < 5
    assert f.numerator == tuple(Fraction(c) for c in R_NUMERATORS[k])
    # over (1+x)^k (1-x-x^2), the denominator the published polynomials use
    expected_den = RationalFunction((1,), (1, -1, -1))
    for _ in range(k):
        expected_den = expected_den / RationalFunction((1, 1))
    assert RationalFunction((1,), f.denominator) == expected_den


# -- 2. sixteen-term lower bound -------------------------------------------------

def test_c2_sixteen_terms(criterion, timer):
    criterion("2  69983/69615 + 16-term odd-divisor sum >= 1.35553519")
    value = B.sixteen_term_lower(QUARTER)
    assert timer() < 1
    assert value >= Fraction(135553519, 10**8)


# -- 3. sandwich consistency ------------------------------------------------------

def test_c3_sandwich(criterion, timer):
    criterion("3  published constants straddle the N=30 product enclosure")
    prod = B.enclose_distinct_product(QUARTER, 30)
    odd = B.enclose_odd_divisor_sum(QUARTER, 30)
    assert prod.width < Fraction(1, 10**15)
    # product targets: bound = constant + c * L(1/4); pushed to the worst end of L's enclosure
    uppers = [
        (Fraction(15, 11), 0),
        (Fraction(13, 11), Fraction(1, 2)),
        (Fraction(141701, 126225), Fraction(2, 3)),
        (Fraction(9364, 6875), 0),
        (Fraction(46754, 34375), 0),
        (Fraction(233506, 171875), 0),
        (Fraction(81239, 68750), Fraction(1, 2)),
        (Fraction(406118, 171875), Fraction(1, 2)),
        (Fraction(88561442, 78890625), Fraction(2, 3)),
    ]
    for const, c in uppers:
        assert const + c * odd.lo > prod.hi, const
    lower = Fraction(69983, 69615) + odd.hi
    assert lower < prod.lo
    assert Fraction(1347596, 3828825) > odd.hi
    for k in range(1, 7):
        assert B.sandwich(QUARTER, k, 30).status == B.PASS
    assert timer() < 1


# -- 4. identity suites ---------------------------------------------------------------

def _passes(report):
    assert report.passed, f"{report.suite}: {report.counterexample}"


def test_c4_histogram_sums(criterion, timer):
    criterion("4  sum Q_k(n) = q(n), sum k Q_k(n) = F_n, n <= 100")
    _passes(I.check_histogram_sums(100))
    assert timer() < 60


def test_c4_closed_forms(criterion, timer):
    criterion("4  closed forms vs brute force (prime powers <= 32, n <= 100); series vs closed forms n <= 500")
    # cold: includes building every brute-force histogram up to n = 100
    _passes(I.check_closed_forms(100, 32))
    _passes(I.check_prime_power_series(500))
    assert timer() < 10


def test_c4_fib_multinomial(criterion, timer):
    criterion("4  sum of multinomials over odd partitions = F_n, n <= 60")
    _passes(I.check_fib_multinomial(60))
    assert timer() < 30


def test_c4_fine(criterion, timer):
    criterion("4  Fine's identity, 1 <= k <= n <= 40")
    _passes(I.check_fine(40))
    assert timer() < 30


def test_c4_inequalities(criterion, timer):
    criterion("4  weight bound k<=8 n<=100; q recurrence n<=1000; window bound; recurrence; fib-binomial")
    _passes(I.check_multinomial_weight_bound(8, 100))
    _passes(I.check_q_recurrence(1000))
    _passes(I.check_window_bound(10, 1000))
    _passes(I.check_window_recurrence(20, 200))
    _passes(I.check_fib_binomial(10, 500))
    assert timer() < 30


# -- 5. monotonicity -----------------------------------------------------------------

def test_c5_monotonicity(criterion, timer):
    criterion("5  R_0..R_3 equal; window_upper decreasing; lower_sequence increasing; upper_sequence decreasing")
    base = B.window_rf(0)
    assert all(B.window_rf(k) == base for k in (1, 2, 3))
    for x in (Fraction(1, 10), QUARTER, Fraction(2, 5), Fraction(3, 5)):
        r = [B.window_upper(x, k).constant for k in range(0, 17)]
        assert all(b <= a for a, b in zip(r, r[1:]))
        b = [B.upper_sequence(x, k).constant for k in range(1, 7)]
        assert all(v < u for u, v in zip(b, b[1:]))
    for x in (Fraction(1, 10), QUARTER, Fraction(1, 2), Fraction(9, 10)):
        a = [B.lower_sequence(x, k).constant for k in range(1, 22)]
        assert all(u < v for u, v in zip(a, a[1:]))
    assert timer() < 5
