"""Partitions into odd parts and the multinomial statistics over them.

``Q_k(n)`` below is the number of partitions of ``n`` into odd parts whose
multinomial coefficient (the number of orderings of the parts) equals ``k``.
It is available by brute force for every ``k`` and in closed form for
``k = 1``, ``k = 2`` and prime powers ``k > 2``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, isqrt
from typing import Iterator

from .series import RationalFunction, binomial_poly, monomial, poly_mul, pochhammer_neg

BRUTE = "brute"
CLOSED = "closed-form"


class NotAPrimePower(ValueError):
    pass


class UnsupportedCase(ValueError):
    pass


@dataclass(frozen=True)
class OddPartition:
    """Multiplicity vector: ``multiplicities[i]`` counts the part ``2i+1``."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        t = tuple(self.multiplicities)
        if any(m < 0 for m in t):
            raise ValueError("multiplicities must be nonnegative")
        while t and t[-1] == 0:
            t = t[:-1]
        object.__setattr__(self, "multiplicities", t)

    @classmethod
    def from_parts(cls, parts) -> "OddPartition":
        parts = list(parts)
        if any(p <= 0 or p % 2 == 0 for p in parts):
            raise ValueError(f"parts must be odd positive integers: {parts}")
        t = [0] * ((max(parts) + 1) // 2 if parts else 0)
        for p in parts:
            t[(p - 1) // 2] += 1
        return cls(tuple(t))

    @property
    def weight(self) -> int:
        return sum((2 * i + 1) * m for i, m in enumerate(self.multiplicities))

    @property
    def num_parts(self) -> int:
        return sum(self.multiplicities)

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in descending order."""
        out: list[int] = []
        for i in range(len(self.multiplicities) - 1, -1, -1):
            out.extend([2 * i + 1] * self.multiplicities[i])
        return tuple(out)

    def __str__(self):
        return "+".join(map(str, self.parts))


def enumerate_odd_partitions(n: int) -> Iterator[OddPartition]:
    """Yield every partition of ``n`` into odd parts once.

    Order: part sequences (written largest first) in lexicographically
    descending order, e.g. 5+1, 3+3, 3+1+1+1, 1+1+1+1+1+1 for ``n = 6``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def walk(remaining: int, largest: int, prefix: list[int]):
        if remaining == 0:
            yield OddPartition.from_parts(prefix)
            return
        top = min(largest, remaining)
        if top % 2 == 0:
            top -= 1
        for part in range(top, 0, -2):
            prefix.append(part)
            yield from walk(remaining - part, part, prefix)
            prefix.pop()

    yield from walk(n, n, [])


def multinomial(p: OddPartition | tuple[int, ...]) -> int:
    """(t_1 + ... + t_m)! / (t_1! ... t_m!) as a product of binomials."""
    t = p.multiplicities if isinstance(p, OddPartition) else p
    total, value = 0, 1
    for m in t:
        total += m
        value *= comb(total, m)
    return value


def _walk_histogram(n: int, hist: Counter) -> None:
    # Each call closes exactly one partition by filling the remainder with 1s,
    # so the number of calls equals q(n).
    def walk(remaining, largest, k, mult, comb=comb, hist=hist):
        hist[mult * comb(k + remaining, remaining)] += 1
        top = min(largest, remaining)
        for part in range(top if top % 2 else top - 1, 1, -2):
            kk, m, rem = k, mult, remaining - part
            while rem >= 0:
                kk += 1
                m = m * kk // (kk - k)
                walk(rem, part - 2, kk, m)
                rem -= part

    walk(n, n, 0, 1)


@lru_cache(maxsize=None)
def _histogram(n: int) -> tuple[tuple[int, int], ...]:
    hist: Counter = Counter()
    _walk_histogram(n, hist)
    return tuple(sorted(hist.items()))


def multinomial_histogram(n: int) -> dict[int, int]:
    """Brute-force ``{k: Q_k(n)}`` over all odd partitions of ``n``; complete, every k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return dict(_histogram(n))


def odd_partition_counts(max_n: int) -> "PartitionCounts":
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    return PartitionCounts(tuple(pochhammer_neg(max_n).as_ints()))


@dataclass(frozen=True)
class PartitionCounts:
    """q(0..N) with q(0) = 1 and q(n) = 0 for n < 0."""

    values: tuple[int, ...]

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def __call__(self, n: int) -> int:
        if n < 0:
            return 0
        return self.values[n]

    __getitem__ = __call__


@lru_cache(maxsize=8)
def _q_values(max_n: int) -> tuple[int, ...]:
    return odd_partition_counts(max_n).values


def q(n: int) -> int:
    """Number of partitions of ``n`` into odd parts (equivalently distinct parts)."""
    if n < 0:
        return 0
    size = 64
    while size < n:
        size *= 2
    return _q_values(size)[n]


# -- divisor counts and closed forms -----------------------------------------

def divisor_count(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            count += 1 if d * d == n else 2
    return count


def odd_divisor_count(n: int) -> int:
    """Q_1(n): partitions with multinomial 1 are c copies of one odd part d, d | n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            count += d % 2
            if e != d:
                count += e % 2
    return count


@dataclass(frozen=True)
class DivisorInfo:
    n: int
    tau: int
    odd_divisor_count: int

    @classmethod
    def of(cls, n: int) -> "DivisorInfo":
        tau = divisor_count(n)
        odd = tau if n % 2 else tau - divisor_count(n // 2)
        return cls(n, tau, odd)


def two_multinomial_count(n: int) -> int:
    """Q_2(n): zero for odd n, floor(n/4) for even n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 0 if n % 2 else n // 4


def prime_power_base(k: int) -> tuple[int, int] | None:
    """``(p, r)`` with ``k == p**r`` and r >= 1, or None."""
    if k < 2:
        return None
    for p in range(2, isqrt(k) + 1):
        if k % p == 0:
            r = 0
            while k % p == 0:
                k //= p
                r += 1
            return (p, r) if k == 1 else None
    return (k, 1)


def prime_powers_up_to(bound: int) -> list[int]:
    """Sorted prime powers ``3 <= p**r <= bound`` (integers > 2 whose divisors form a geometric progression)."""
    if bound < 3:
        raise ValueError("bound must be >= 3")
    return [k for k in range(3, bound + 1) if prime_power_base(k)]


def nth_geometric_divisor_integer(index: int) -> int:
    """1-based index into 1, 2, 3, 4, 5, 7, 8, 9, 11, ...: the integers whose divisors form a geometric progression."""
    if index < 1:
        raise ValueError("index must be >= 1")
    if index <= 2:
        return index
    bound = 8
    while True:
        pp = prime_powers_up_to(bound)
        if len(pp) >= index - 2:
            return pp[index - 3]
        bound *= 2


def _check_prime_power(k: int) -> tuple[int, int]:
    base = prime_power_base(k)
    if base is None:
        raise NotAPrimePower(f"{k} is not a prime power")
    if k == 2:
        raise UnsupportedCase("no prime-power closed form for k=2; use two_multinomial_count")
    return base


def prime_power_multinomial_count(k: int, n: int) -> int:
    """Closed form for Q_k(n) when ``k = p**r > 2``."""
    p, _ = _check_prime_power(k)
    if n < 1:
        raise ValueError("n must be >= 1")
    if p == 2:
        if n % 2:
            return 0
        return -(-((n - 1) // (k - 1)) // 2) - (1 if n % k == 0 else 0) * ((n // k) % 2)
    if n % 2 == 0:
        return 0
    return -(-((n - 1) // (k - 1)) // 2) - (1 if n % k == 0 else 0)


def multinomial_count_closed(k: int, n: int) -> int:
    """Closed-form Q_k(n) for k = 1, 2 or a prime power; NotAPrimePower otherwise."""
    if k == 1:
        return odd_divisor_count(n)
    if k == 2:
        return two_multinomial_count(n)
    return prime_power_multinomial_count(k, n)


def has_closed_form(k: int) -> bool:
    return k in (1, 2) or prime_power_base(k) is not None


def two_multinomial_gf() -> RationalFunction:
    """x**4 / ((1-x**2)(1-x**4))."""
    return RationalFunction(monomial(4), poly_mul(binomial_poly(2), binomial_poly(4)))


def prime_power_multinomial_gf(k: int) -> RationalFunction:
    """x**k/((1-x**2)(1-x**(2(k-1)))) - x**k/(1-x**(2k)) for a prime power k > 2."""
    _check_prime_power(k)
    first = RationalFunction(monomial(k), poly_mul(binomial_poly(2), binomial_poly(2 * (k - 1))))
    second = RationalFunction(monomial(k), binomial_poly(2 * k))
    return first - second


def prime_power_multinomial_series(k: int, order: int):
    return prime_power_multinomial_gf(k).expand(order)


def multinomial_gf(k: int) -> RationalFunction:
    """Generating function of Q_k(n) where a closed form exists (k = 2 or prime power > 2)."""
    if k == 2:
        return two_multinomial_gf()
    if k == 1:
        raise UnsupportedCase("Q_1 is generated by a Lambert series, not a rational function")
    return prime_power_multinomial_gf(k)


# -- Q tables ---------------------------------------------------------------

@dataclass
class QRow:
    n: int
    counts: dict[int, int]
    provenance: dict[int, str] = field(default_factory=dict)

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)


@dataclass
class QTable:
    rows: dict[int, QRow] = field(default_factory=dict)

    def __getitem__(self, n: int) -> QRow:
        return self.rows[n]

    def __iter__(self):
        return iter(self.rows[n] for n in sorted(self.rows))


def qk_brute(n: int, max_k: int | None = None) -> QRow:
    """Full histogram row; ``max_k`` does not truncate the histogram."""
    hist = multinomial_histogram(n)
    return QRow(n, hist, {k: BRUTE for k in hist})


def qk_closed(n: int, ks) -> QRow:
    counts: dict[int, int] = {}
    for k in ks:
        v = multinomial_count_closed(k, n)
        if v:
            counts[k] = v
    return QRow(n, counts, {k: CLOSED for k in counts})


def build_qtable(max_n: int, source: str = BRUTE, max_k: int | None = None) -> QTable:
    """Rows 1..max_n, brute force or closed form (closed form needs every k <= max_k to have one)."""
    table = QTable()
    if source == BRUTE:
        for n in range(1, max_n + 1):
            table.rows[n] = qk_brute(n)
    elif source == CLOSED:
        if max_k is None:
            raise ValueError("closed-form tables need max_k")
        missing = [k for k in range(1, max_k + 1) if not has_closed_form(k)]
        if missing:
            raise NotAPrimePower(f"no closed form for k in {missing}")
        for n in range(1, max_n + 1):
            table.rows[n] = qk_closed(n, range(1, max_k + 1))
    else:
        raise ValueError(f"unknown source {source!r}")
    return table


# -- general partitions (for Fine's identity) ----------------------------------

def partitions_into_k_parts(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors ``t`` (t[i] counts part i+1) of partitions of n into exactly k parts."""

    def walk(remaining: int, parts_left: int, largest: int, counts: list[int]):
        if parts_left == 0:
            if remaining == 0:
                yield tuple(counts)
            return
        # remaining parts each lie in [1, largest]
        lo = -(-remaining // parts_left)
        for part in range(min(largest, remaining - parts_left + 1), lo - 1, -1):
            counts[part - 1] += 1
            yield from walk(remaining - part, parts_left - 1, part, counts)
            counts[part - 1] -= 1

    yield from walk(n, k, n, [0] * n)


def check_fine_formula(n: int, k: int) -> bool:
    """C(n-1; k-1, n-k) == sum of multinomials over partitions of n into exactly k parts."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    lhs = comb(n - 1, k - 1)
    rhs = sum(multinomial(t) for t in partitions_into_k_parts(n, k))
    return lhs == rhs


def fine_sides(n: int, k: int) -> tuple[int, int]:
    return comb(n - 1, k - 1), sum(multinomial(t) for t in partitions_into_k_parts(n, k))


