"""Fibonacci numbers, binomial window sums, and finite verification suites.

Every check is an exact integer comparison.  A suite scans its grid in
canonical order (n ascending outer, k ascending inner) and stops at the
first counterexample, so a failure is reproducible from the report alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable

from . import partitions as P
from .series import TruncatedSeries, odd_pochhammer, pochhammer_neg

# weight variants for the binomial window sums
Q_ONLY = "q"
TWO_Q = "2q-Q1"
THREE_Q = "3q-2Q1-Q2"
VARIANTS = (Q_ONLY, TWO_Q, THREE_Q)


@lru_cache(maxsize=16)
def fib(max_n: int) -> tuple[int, ...]:
    """F_0..F_max_n."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    out = [0, 1]
    for _ in range(max_n - 1):
        out.append(out[-1] + out[-2])
    return tuple(out)


def fibonacci(n: int) -> int:
    return fib(max(n, 1))[n]


@dataclass(frozen=True)
class Tables:
    """q, Q_1, Q_2 and F up to ``max_n``; negative arguments read as 0, Q_1(0) = Q_2(0) = 0."""

    max_n: int
    q: tuple[int, ...]
    q1: tuple[int, ...]
    q2: tuple[int, ...]
    fib: tuple[int, ...]

    def weight(self, variant: str, m: int) -> int:
        if m < 0:
            return 0
        if variant == Q_ONLY:
            return self.q[m]
        if variant == TWO_Q:
            return 2 * self.q[m] - self.q1[m]
        if variant == THREE_Q:
            return 3 * self.q[m] - 2 * self.q1[m] - self.q2[m]
        raise ValueError(f"unknown weight variant {variant!r}")


@lru_cache(maxsize=8)
def tables(max_n: int) -> Tables:
    q = tuple(pochhammer_neg(max_n).as_ints())
    q1 = (0,) + tuple(P.odd_divisor_count(n) for n in range(1, max_n + 1))
    q2 = (0,) + tuple(P.two_multinomial_count(n) for n in range(1, max_n + 1))
    return Tables(max_n, q, q1, q2, fib(max(max_n, 1)))


def _tables_for(n: int) -> Tables:
    size = 64
    while size < n:
        size *= 2
    return tables(size)


def window_sum(variant: str, k: int, n: int, tab: Tables | None = None) -> int:
    """sum_{j=0..k} C(k, j) * w(n - k - j) for the weight ``w`` named by ``variant``."""
    if k < 0 or n < 0:
        raise ValueError("k and n must be >= 0")
    tab = tab or _tables_for(n)
    return sum(comb(k, j) * tab.weight(variant, n - k - j) for j in range(k + 1))




def window_series(k: int, order: int) -> TruncatedSeries:
    """x**k (1+x)**k prod(1+x**j), whose coefficients are the q-only window sums."""
    base = TruncatedSeries([comb(k, j) for j in range(k + 1)], order).shift(k)
    return base * pochhammer_neg(order)


# -- reports ----------------------------------------------------------------

@dataclass
class Counterexample:
    n: int
    k: int | None
    lhs: int
    rhs: int
    note: str = ""


@dataclass
class VerificationReport:
    suite: str
    grid: dict[str, tuple[int, int]]
    passed: bool = True
    counterexample: Counterexample | None = None
    checked: int = 0
    detail: str = ""
    extra: list["VerificationReport"] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def grid_text(self) -> str:
        return " ".join(f"{name}={lo}..{hi}" for name, (lo, hi) in self.grid.items())

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "status": self.status,
            "grid": {name: [lo, hi] for name, (lo, hi) in self.grid.items()},
            "checked": self.checked,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            c = self.counterexample
            out["counterexample"] = {"n": c.n, "k": c.k, "lhs": str(c.lhs), "rhs": str(c.rhs), "note": c.note}
        return out

    def fail(self, n, k, lhs, rhs, note=""):
        self.passed = False
        self.counterexample = Counterexample(n, k, lhs, rhs, note)
        return self


def _scan(report: VerificationReport, cells, test: Callable) -> VerificationReport:
    """Run ``test(n, k) -> (ok, lhs, rhs)`` over ``cells`` (already in canonical order)."""
    for n, k in cells:
        ok, lhs, rhs = test(n, k)
        report.checked += 1
        if not ok:
            return report.fail(n, k, lhs, rhs)
    return report


# -- suites -----------------------------------------------------------------

def check_window_bound(max_k: int, max_n: int) -> VerificationReport:
    """sum_j C(k,j) q(n-k-j) <= F_n for 0 <= k <= max_k, 2k < n <= max_n."""
    tab = tables(max_n)
    report = VerificationReport("window-bound", {"k": (0, max_k), "n": (1, max_n)})
    cells = ((n, k) for n in range(1, max_n + 1) for k in range(0, max_k + 1) if 2 * k < n)

    def test(n, k):
        s = window_sum(Q_ONLY, k, n, tab)
        return s <= tab.fib[n], s, tab.fib[n]

    return _scan(report, cells, test)




def check_window_recurrence(max_k: int, max_n: int) -> VerificationReport:
    """S(n+2, k+1) == S(n+1, k) + S(n, k) for the q-only window sums."""
    tab = tables(max_n + 2)
    report = VerificationReport("window-recurrence", {"k": (0, max_k), "n": (0, max_n)})
    cells = ((n, k) for n in range(0, max_n + 1) for k in range(0, max_k + 1))

    def test(n, k):
        lhs = window_sum(Q_ONLY, k + 1, n + 2, tab)
        rhs = window_sum(Q_ONLY, k, n + 1, tab) + window_sum(Q_ONLY, k, n, tab)
        return lhs == rhs, lhs, rhs

    return _scan(report, cells, test)




def check_fib_binomial(max_k: int, max_n: int) -> VerificationReport:
    """sum_j C(k,j) F_{n-k-j} == F_n for n >= 2k."""
    f = fib(max(max_n, 1))
    report = VerificationReport("fib-binomial", {"k": (0, max_k), "n": (0, max_n)})
    cells = ((n, k) for n in range(0, max_n + 1) for k in range(0, max_k + 1) if n >= 2 * k)

    def test(n, k):
        lhs = sum(comb(k, j) * f[n - k - j] for j in range(k + 1))
        return lhs == f[n], lhs, f[n]

    return _scan(report, cells, test)


def check_multinomial_weight_bound(max_k: int, max_n: int) -> VerificationReport:
    """k q(n) <= F_n + sum_{j<k} (k-j) Q_j(n), with brute-force Q_j."""
    tab = tables(max_n)
    report = VerificationReport("weight-bound", {"k": (1, max_k), "n": (1, max_n)})
    cells = ((n, k) for n in range(1, max_n + 1) for k in range(1, max_k + 1))

    def test(n, k):
        hist = P.multinomial_histogram(n)
        lhs = k * tab.q[n]
        rhs = tab.fib[n] + sum((k - j) * hist.get(j, 0) for j in range(1, k))
        return lhs <= rhs, lhs, rhs

    return _scan(report, cells, test)




def check_histogram_sums(max_n: int) -> VerificationReport:
    """sum_k Q_k(n) == q(n) and sum_k k Q_k(n) == F_n from brute-force histograms."""
    tab = tables(max_n)
    report = VerificationReport("histogram-sums", {"n": (1, max_n)})
    for n in range(1, max_n + 1):
        hist = P.multinomial_histogram(n)
        count = sum(hist.values())
        weighted = sum(k * v for k, v in hist.items())
        report.checked += 1
        if count != tab.q[n]:
            return report.fail(n, None, count, tab.q[n], "sum of Q_k(n) vs q(n)")
        if weighted != tab.fib[n]:
            return report.fail(n, None, weighted, tab.fib[n], "sum of k Q_k(n) vs F_n")
    return report


def check_closed_forms(max_n: int, max_k: int = 100) -> VerificationReport:
    """Closed forms for Q_1, Q_2 and prime powers <= max_k against brute force."""
    ks = [1, 2] + P.prime_powers_up_to(max(max_k, 3))
    ks = [k for k in ks if k <= max_k]
    report = VerificationReport("closed-forms", {"k": (1, max_k), "n": (1, max_n)})
    for n in range(1, max_n + 1):
        hist = P.multinomial_histogram(n)
        for k in ks:
            closed = P.multinomial_count_closed(k, n)
            report.checked += 1
            if closed != hist.get(k, 0):
                return report.fail(n, k, closed, hist.get(k, 0), "closed form vs brute force")
    return report


DEFAULT_SERIES_PRIME_POWERS = (3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32)


def check_prime_power_series(max_n: int, ks=DEFAULT_SERIES_PRIME_POWERS) -> VerificationReport:
    """Coefficients of the prime-power generating functions against the closed counts."""
    report = VerificationReport("prime-power-series", {"k": (min(ks), max(ks)), "n": (1, max_n)})
    series = {k: P.prime_power_multinomial_series(k, max_n) for k in ks}
    for n in range(1, max_n + 1):
        for k in ks:
            coeff = series[k][n]
            closed = P.prime_power_multinomial_count(k, n)
            report.checked += 1
            if coeff != closed:
                return report.fail(n, k, coeff, closed, "series coefficient vs closed form")
    return report


def check_fib_multinomial(max_n: int) -> VerificationReport:
    """Sum of multinomials over odd partitions of n equals F_n."""
    f = fib(max(max_n, 1))
    report = VerificationReport("fib-multinomial", {"n": (1, max_n)})
    for n in range(1, max_n + 1):
        total = sum(P.multinomial(p) for p in P.enumerate_odd_partitions(n))
        report.checked += 1
        if total != f[n]:
            return report.fail(n, None, total, f[n])
    return report


def check_fine(max_n: int) -> VerificationReport:
    """C(n-1, k-1) == sum of multinomials over partitions of n into exactly k parts, 1 <= k <= n."""
    report = VerificationReport("fine", {"k": (1, max_n), "n": (1, max_n)})
    cells = ((n, k) for n in range(1, max_n + 1) for k in range(1, n + 1))

    def test(n, k):
        lhs, rhs = P.fine_sides(n, k)
        return lhs == rhs, lhs, rhs

    return _scan(report, cells, test)


def distinct_minus_fib_series(order: int) -> TruncatedSeries:
    """(1 - x - x**2) / prod(1 - x**(2j+1)), computed through the reciprocal."""
    recip = odd_pochhammer(order).reciprocal()
    return TruncatedSeries([1, -1, -1], order) * recip


def euler_form_series(order: int) -> TruncatedSeries:
    """1 - sum_{m>=1} x**(3m-1)/(x**2;x**2)_m * (1 + x**2 + x**3 + ... + x**(2m-1)).

    Every subtracted term has nonnegative coefficients, so all coefficients
    beyond the constant are visibly <= 0.
    """
    total = [0] * (order + 1)
    total[0] = 1
    inv = [0] * (order + 1)  # 1/(x^2;x^2)_m, updated in place
    inv[0] = 1
    m = 1
    while 3 * m - 1 <= order:
        step = 2 * m
        for i in range(step, order + 1):
            inv[i] += inv[i - step]
        # inv * (1 + x^2 + ... + x^(2m-1)) = inv * ((1 - x^(2m))/(1 - x) - x)
        shift = 3 * m - 1
        width = order + 1 - shift
        run, cum = 0, []
        for i in range(width):
            run += inv[i]
            cum.append(run)
        for i in range(width):
            h = cum[i] - (cum[i - step] if i >= step else 0) - (inv[i - 1] if i >= 1 else 0)
            total[shift + i] -= h
        m += 1
    return TruncatedSeries.from_ints(total)


def check_q_recurrence(max_n: int, injection_n: int = 40) -> VerificationReport:
    """q(n) - q(n-1) - q(n-2) <= 0 for 0 < n <= max_n, three ways.

    * directly from the q table;
    * coefficientwise from (1 - x - x**2)/(x;x**2)_inf via a series reciprocal,
      which must also agree with the Euler-form expansion;
    * by checking, for n <= injection_n, that removing a part 1 and lowering
      the smallest part (>= 3) by 2 are injections into the partitions of
      n-1 and n-2 respectively.
    """
    tab = tables(max_n)
    report = VerificationReport("q-recurrence", {"n": (1, max_n)})
    for n in range(1, max_n + 1):
        lhs = tab.q[n] - (tab.q[n - 1] if n >= 1 else 0) - (tab.q[n - 2] if n >= 2 else 0)
        report.checked += 1
        if lhs > 0:
            return report.fail(n, None, lhs, 0, "q(n)-q(n-1)-q(n-2)")
    ser = distinct_minus_fib_series(max_n)
    euler = euler_form_series(max_n)
    for n in range(1, max_n + 1):
        report.checked += 1
        if ser[n] > 0:
            return report.fail(n, None, ser[n], 0, "series coefficient of (1-x-x^2)/(x;x^2)_inf")
        if ser[n] != euler[n]:
            return report.fail(n, None, ser[n], euler[n], "reciprocal form vs Euler form")
        if ser[n] != tab.q[n] - tab.q[n - 1] - (tab.q[n - 2] if n >= 2 else 0):
            return report.fail(n, None, ser[n], 0, "series coefficient vs q differences")
    inj_top = min(injection_n, max_n)
    for n in range(1, inj_top + 1):
        report.checked += 1
        bad = _injection_failure(n)
        if bad is not None:
            return report.fail(n, None, bad[0], bad[1], "injection")
    report.detail = f"injections checked for n=1..{inj_top}"
    return report




def _injection_failure(n: int):
    """Return (images, targets) counts when the injections fail at n, else None."""
    ones, rest = set(), set()
    for p in P.enumerate_odd_partitions(n):
        parts = list(p.parts)
        if parts[-1] == 1:
            image = tuple(parts[:-1])
            if image in ones or sum(image) != n - 1:
                return len(ones), n - 1
            ones.add(image)
        else:
            image = tuple(sorted(parts[:-1] + [parts[-1] - 2], reverse=True))
            if image in rest or sum(image) != n - 2 or any(x % 2 == 0 for x in image):
                return len(rest), n - 2
            rest.add(image)
    return None


# -- registry ---------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[..., VerificationReport]
    max_n: int
    max_k: int | None = None
    brute_guard: int | None = None


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("histogram-sums", lambda k, n: check_histogram_sums(n), 100, brute_guard=100),
        Suite("closed-forms", lambda k, n: check_closed_forms(n, k), 100, 32, brute_guard=100),
        Suite("prime-power-series", lambda k, n: check_prime_power_series(n), 500),
        Suite("fib-multinomial", lambda k, n: check_fib_multinomial(n), 60, brute_guard=60),
        Suite("fine", lambda k, n: check_fine(n), 40, brute_guard=40),
        Suite("weight-bound", check_multinomial_weight_bound, 100, 8, brute_guard=100),
        Suite("q-recurrence", lambda k, n: check_q_recurrence(n), 1000),
        Suite("window-bound", check_window_bound, 1000, 10),
        Suite("window-recurrence", check_window_recurrence, 200, 20),
        Suite("fib-binomial", check_fib_binomial, 500, 10),
    )
}


def run_suite(name: str, max_n: int | None = None, max_k: int | None = None,
              guard: bool = True) -> VerificationReport:
    """Run a registered suite; ``max_n``/``max_k`` override its defaults.

    With ``guard`` on, brute-force suites are clamped to their enumeration
    bound; the report's grid always shows what actually ran.
    """
    suite = SUITES[name]
    n = suite.max_n if max_n is None else max_n
    if guard and suite.brute_guard is not None:
        n = min(n, suite.brute_guard)
    k = suite.max_k if max_k is None else max_k
    if suite.max_k is None:
        k = None
    return suite.run(k, n)
