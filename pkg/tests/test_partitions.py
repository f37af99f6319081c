from collections import Counter
from itertools import combinations_with_replacement
from math import factorial

import pytest

from oddpart import partitions as P
from oddpart.identities import fib


def odd_partitions_oracle(n):
    """All multisets of odd parts summing to n, as sorted tuples."""
    odds = list(range(1, n + 1, 2))
    out = set()
    for r in range(1, n + 1):
        for c in combinations_with_replacement(odds, r):
            if sum(c) == n:
                out.add(tuple(sorted(c, reverse=True)))
    return out


def multinomial_oracle(parts):
    counts = Counter(parts)
    value = factorial(len(parts))
    for m in counts.values():
        value //= factorial(m)
    return value


def test_enumerate_six():
    parts = [p.parts for p in P.enumerate_odd_partitions(6)]
    assert parts == [(5, 1), (3, 3), (3, 1, 1, 1), (1, 1, 1, 1, 1, 1)]


def test_enumerate_one_and_nine():
    assert [p.multiplicities for p in P.enumerate_odd_partitions(1)] == [(1,)]
    assert len(list(P.enumerate_odd_partitions(9))) == 8 == P.q(9)


@pytest.mark.parametrize("n", range(1, 19))
def test_enumeration_matches_oracle(n):
    got = [p.parts for p in P.enumerate_odd_partitions(n)]
    assert len(got) == len(set(got)) == P.q(n)
    assert set(got) == odd_partitions_oracle(n)
    assert all(p.weight == n for p in P.enumerate_odd_partitions(n))
    assert got == sorted(got, reverse=True)


def test_odd_partition_type():
    p = P.OddPartition((3, 1, 0, 0))
    assert p.multiplicities == (3, 1)
    assert p.weight == 6 and p.num_parts == 4
    assert P.OddPartition.from_parts([3, 1, 1, 1]) == p
    with pytest.raises(ValueError):
        P.OddPartition.from_parts([2, 4])


@pytest.mark.parametrize("parts, expected", [((5, 1), 2), ((3, 3), 1), ((3, 1, 1, 1), 4)])
def test_multinomial_examples(parts, expected):
    assert P.multinomial(P.OddPartition.from_parts(parts)) == expected


def test_multinomial_matches_factorials():
    for n in range(1, 25):
        for p in P.enumerate_odd_partitions(n):
            assert P.multinomial(p) == multinomial_oracle(p.parts)


def test_q_values():
    assert P.q(6) == 4
    assert P.q(0) == 1
    assert P.q(10) == 10
    assert P.q(-3) == 0
    counts = P.odd_partition_counts(10)
    assert counts(-1) == 0 and counts[10] == 10 and counts.max_n == 10


@pytest.mark.parametrize("n, expected", [(6, 2), (9, 3), (1, 1)])
def test_odd_divisor_examples(n, expected):
    assert P.odd_divisor_count(n) == expected


def test_divisor_info_relation():
    for n in range(1, 300):
        info = P.DivisorInfo.of(n)
        assert info.odd_divisor_count == P.odd_divisor_count(n)
        assert info.tau == sum(1 for d in range(1, n + 1) if n % d == 0)


@pytest.mark.parametrize("n, expected", [(6, 1), (7, 0), (8, 2)])
def test_two_multinomial_examples(n, expected):
    assert P.two_multinomial_count(n) == expected


def test_two_multinomial_is_two_distinct_odd_parts():
    for n in range(1, 201):
        direct = sum(1 for a in range(1, n, 2) for b in range(a + 2, n, 2) if a + b == n)
        assert P.two_multinomial_count(n) == direct


@pytest.mark.parametrize("k, n, expected", [(3, 9, 1), (4, 8, 1), (3, 2, 0), (4, 6, 1)])
def test_prime_power_examples(k, n, expected):
    assert P.prime_power_multinomial_count(k, n) == expected


def test_prime_power_errors():
    with pytest.raises(P.NotAPrimePower):
        P.prime_power_multinomial_count(6, 10)
    with pytest.raises(P.UnsupportedCase):
        P.prime_power_multinomial_count(2, 10)
    with pytest.raises(P.NotAPrimePower):
        P.prime_power_multinomial_gf(12)


def test_histogram_examples():
    assert P.multinomial_histogram(6) == {1: 2, 2: 1, 4: 1}
    assert P.multinomial_histogram(1) == {1: 1}
    row = P.multinomial_histogram(9)
    assert sum(k * v for k, v in row.items()) == 34


@pytest.mark.parametrize("n", range(1, 26))
def test_histogram_matches_enumeration(n):
    direct = Counter(P.multinomial(p) for p in P.enumerate_odd_partitions(n))
    assert P.multinomial_histogram(n) == dict(direct)


def test_prime_powers_up_to():
    assert P.prime_powers_up_to(10) == [3, 4, 5, 7, 8, 9]
    assert P.prime_powers_up_to(3) == [3]
    assert P.prime_powers_up_to(32) == [3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


def test_geometric_divisor_indexing():
    assert [P.nth_geometric_divisor_integer(i) for i in range(1, 12)] == [1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    for i in range(1, 40):
        m = P.nth_geometric_divisor_integer(i)
        divs = [d for d in range(1, m + 1) if m % d == 0]
        ratios = {divs[j + 1] * divs[0] == divs[1] * divs[j] for j in range(len(divs) - 1)} if len(divs) > 1 else set()
        assert all(ratios)


@pytest.mark.parametrize("n, k", [(4, 2), (5, 1), (8, 3)])
def test_fine_examples(n, k):
    assert P.check_fine_formula(n, k)


def test_fine_sides_small():
    assert P.fine_sides(4, 2) == (3, 3)


def test_partitions_into_k_parts_count():
    # p(n, k) by recurrence p(n,k) = p(n-1,k-1) + p(n-k,k)
    def pk(n, k, memo={}):
        if k == 0:
            return 1 if n == 0 else 0
        if n < k:
            return 0
        if (n, k) not in memo:
            memo[n, k] = pk(n - 1, k - 1) + pk(n - k, k)
        return memo[n, k]

    for n in range(1, 20):
        for k in range(1, n + 1):
            assert len(list(P.partitions_into_k_parts(n, k))) == pk(n, k)


def test_qtable_sources():
    brute = P.build_qtable(30)
    closed = P.build_qtable(30, P.CLOSED, max_k=5)
    for row in closed:
        for k in range(1, 6):
            assert row[k] == brute[row.n][k]
        assert set(row.provenance.values()) <= {P.CLOSED}
    assert brute[6].provenance == {1: P.BRUTE, 2: P.BRUTE, 4: P.BRUTE}
    with pytest.raises(P.NotAPrimePower):
        P.build_qtable(5, P.CLOSED, max_k=6)


def test_qtable_row_sums():
    f = fib(60)
    for row in P.build_qtable(40):
        assert sum(row.counts.values()) == P.q(row.n)
        assert sum(k * v for k, v in row.counts.items()) == f[row.n]


@pytest.mark.slow
def test_brute_force_closed_forms_to_100():
    ks = [1, 2] + P.prime_powers_up_to(100)
    for n in range(1, 101):
        hist = P.multinomial_histogram(n)
        for k in ks:
            assert hist.get(k, 0) == P.multinomial_count_closed(k, n), (n, k)


def test_series_matches_closed_forms():
    for k in (3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32):
        s = P.prime_power_multinomial_series(k, 500)
        assert [s[n] for n in range(1, 501)] == [P.prime_power_multinomial_count(k, n) for n in range(1, 501)]


def test_series_examples():
    assert P.prime_power_multinomial_series(3, 9)[9] == 1
    s4 = P.prime_power_multinomial_series(4, 8)
    assert s4[6] == s4[8] == 1
    assert set(P.prime_power_multinomial_series(3, 2)) == {0}


def test_odd_partition_sum_is_fibonacci():
    f = fib(40)
    for n in range(1, 41):
        assert sum(P.multinomial(p) for p in P.enumerate_odd_partitions(n)) == f[n]
