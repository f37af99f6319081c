"""Bound families for prod(1 + x**n) and the odd-divisor Lambert sum.

Every bound is normalised to the shape

    target  (<= or >=)  constant + sum_coefficient * L(x),

where ``L(x) = sum_{n>=1} x**n / (1 - x**(2n))`` and the target is either the
product ``prod_{n>=1} (1 + x**n)`` or ``L(x)`` itself.  Constants are exact
rationals; the infinite quantities are handled through certified
enclosures.

Tail estimates (both stay inside Q):

* sum: for n > N, ``x**n / (1 - x**(2n)) <= x**n / (1 - x**(2(N+1)))``, and
  summing the geometric tail gives ``x**(N+1) / ((1-x)(1-x**(2(N+1))))``.
* product: with ``t = sum_{n>N} x**n = x**(N+1)/(1-x)``,
  ``prod_{n>N}(1+x**n) <= exp(t) <= 1/(1-t)`` whenever ``t < 1``.

Truncating the prime-power sums only weakens a bound: every dropped term is
the generating function of a count Q_k(n) >= 0, so at 0 < x < 1 it is
nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import identities as I
from . import partitions as Pt
from .series import (
    GOLDEN,
    UNIT,
    RationalFunction,
    as_point,
    fibonacci_gf,
    format_decimal,
    format_rational,
    poly_mul,
    poly_pow,
    poly_sub,
)


class TailDiverges(ValueError):
    pass


class UnsupportedK(ValueError):
    pass


class CancellationFailure(ArithmeticError):
    pass


PRODUCT = "product"
ODD_DIVISOR_SUM = "odd-divisor-sum"


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("enclosure with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def within(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def render(self, digits: int = 12) -> str:
        return f"[{format_decimal(self.lo, digits, 'down')}, {format_decimal(self.hi, digits, 'up')}]"


def enclose_odd_divisor_sum(x, terms: int) -> Enclosure:
    """Enclose sum_{n>=1} x**n/(1 - x**(2n)) using ``terms`` exact terms."""
    x = as_point(x, UNIT)
    if terms < 0:
        raise ValueError("terms must be >= 0")
    lo = sum((x**n / (1 - x ** (2 * n)) for n in range(1, terms + 1)), Fraction(0))
    m = terms + 1
    return Enclosure(lo, lo + x**m / ((1 - x) * (1 - x ** (2 * m))))


def product_partial(x, terms: int) -> Fraction:
    x = as_point(x, UNIT)
    value = Fraction(1)
    for n in range(1, terms + 1):
        value *= 1 + x**n
    return value


def enclose_distinct_product(x, terms: int) -> Enclosure:
    """Enclose prod_{n>=1}(1 + x**n); raises TailDiverges when x**(N+1)/(1-x) >= 1."""
    x = as_point(x, UNIT)
    if terms < 0:
        raise ValueError("terms must be >= 0")
    lo = product_partial(x, terms)
    tail = x ** (terms + 1) / (1 - x)
    if tail >= 1:
        raise TailDiverges(f"tail bound needs x^(N+1)/(1-x) < 1, got {format_rational(tail)}")
    return Enclosure(lo, lo / (1 - tail))


@dataclass(frozen=True)
class BoundResult:
    """``target <side> constant + sum_coefficient * L(x)``; ``value`` is the stated right-hand side."""

    constant: Fraction
    side: str
    target: str = PRODUCT
    sum_coefficient: Fraction = Fraction(0)
    provenance: str = ""
    value: Fraction | None = None

    def certified_value(self, odd_sum: Enclosure) -> Fraction:
        """The bound pushed in its weak direction across the sum enclosure."""
        if not self.sum_coefficient:
            return self.constant
        end = odd_sum.hi if self.side == "upper" else odd_sum.lo
        return self.constant + self.sum_coefficient * end

    def strict_value(self, odd_sum: Enclosure) -> Fraction:
        """The bound pushed in its strong direction (worst case for certification)."""
        if not self.sum_coefficient:
            return self.constant
        end = odd_sum.lo if self.side == "upper" else odd_sum.hi
        return self.constant + self.sum_coefficient * end


def _rf(x, f: RationalFunction) -> Fraction:
    return f.eval(x)


def prime_power_terms(x, subset, weighted: bool = False) -> Fraction:
    total = Fraction(0)
    for k in subset:
        g = _rf(x, Pt.prime_power_multinomial_gf(k))
        total += k * g if weighted else g
    return total


def prime_power_lower(x, p_subset=(3,), include_two: bool = True) -> BoundResult:
    """prod(1+x**n) > 1 + GF_2(x) + sum_{k in subset} GF_k(x) + L(x), for 0 < x < 1."""
    x = as_point(x, UNIT)
    p_subset = tuple(p_subset)
    value = Fraction(1)
    if include_two:
        value += _rf(x, Pt.two_multinomial_gf())
    value += prime_power_terms(x, p_subset)
    return BoundResult(value, "lower", PRODUCT, Fraction(1),
                       f"prime-power lower, subset={list(p_subset)}")


def odd_divisor_sum_upper(x, p_subset=(3,)) -> BoundResult:
    """L(x) < x/(1-x-x^2) - 2 GF_2(x) - sum_{k in subset} k GF_k(x), for x + x^2 < 1."""
    x = as_point(x, GOLDEN)
    p_subset = tuple(p_subset)
    value = _rf(x, fibonacci_gf()) - 2 * _rf(x, Pt.two_multinomial_gf()) - prime_power_terms(x, p_subset, True)
    return BoundResult(value, "upper", ODD_DIVISOR_SUM, Fraction(0),
                       f"odd-divisor upper, subset={list(p_subset)}")


def lower_sequence(x, k: int) -> BoundResult:
    """Lower-sequence constant: 1, then add GF at 2, 3, 4, 5, 7, 8, ... (geometric-divisor integers)."""
    x = as_point(x, UNIT)
    if k < 1:
        raise ValueError("k must be >= 1")
    value = Fraction(1)
    for i in range(2, k + 1):
        p = Pt.nth_geometric_divisor_integer(i)
        value += _rf(x, Pt.multinomial_gf(p))
    return BoundResult(value, "lower", PRODUCT, Fraction(1), f"lower sequence k={k}")


MAX_UPPER_K = 6


def upper_sequence(x, k: int) -> BoundResult:
    """Upper-sequence constant 1 + (x/(1-x-x^2) + sum_{j=2}^{k-1} (k-j) GF_j(x)) / k.

    Needs GF_j for j < k; j = 6 has no closed form, hence k <= 6.
    """
    x = as_point(x, GOLDEN)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > MAX_UPPER_K:
        raise UnsupportedK(f"k={k} needs the generating function of Q_6, which has no closed form")
    total = _rf(x, fibonacci_gf())
    for j in range(2, k):
        total += (k - j) * _rf(x, Pt.multinomial_gf(j))
    value = 1 + total / k
    return BoundResult(value, "upper", PRODUCT, Fraction(k - 1, k), f"upper sequence k={k}")


def upper_sequence_recurrence(x, k: int) -> Fraction:
    """Same constant via k upper_sequence = (k-1) B_{k-1} + 1 + sum_{j=2}^{k-1} GF_j; independent path for tests."""
    x = as_point(x, GOLDEN)
    if k > MAX_UPPER_K:
        raise UnsupportedK(f"k={k} exceeds {MAX_UPPER_K}")
    b = 1 + _rf(x, fibonacci_gf())
    for kk in range(2, k + 1):
        b = ((kk - 1) * b + 1 + sum((_rf(x, Pt.multinomial_gf(j)) for j in range(2, kk)), Fraction(0))) / kk
    return b


# -- window bounds ----------------------------------------------------------

WEIGHT_MULTIPLIER = {I.Q_ONLY: 1, I.TWO_Q: 2, I.THREE_Q: 3}
SUM_COEFFICIENT = {I.Q_ONLY: Fraction(0), I.TWO_Q: Fraction(1, 2), I.THREE_Q: Fraction(2, 3)}


def window_rf(k: int, variant: str = I.Q_ONLY) -> RationalFunction:
    """1/(x^(k-1)(1+x)^k(1-x-x^2)) - (1/(x^k(1+x)^k)) sum_{n<=2k}(F_n - S_{n,k}) x^n.

    Assembled over (1+x)^k (1-x-x^2): the numerator x - (1-x-x^2) sum(...) must
    vanish below degree k, and is then divided by x^k exactly.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    f = I.fib(max(2 * k, 1))
    tab = I.tables(max(2 * k, 1))
    bracket = [Fraction(f[n] - I.window_sum(variant, k, n, tab)) for n in range(2 * k + 1)]
    numerator = list(poly_sub((Fraction(0), Fraction(1)), poly_mul((1, -1, -1), bracket)))
    numerator += [Fraction(0)] * (k + 1 - len(numerator))
    if any(numerator[:k]):
        raise CancellationFailure(f"pole at 0 survives for k={k}, variant={variant}: {numerator[:k]}")
    numerator = numerator[k:]
    denominator = poly_mul(poly_pow((1, 1), k), (1, -1, -1))
    return RationalFunction(numerator, denominator)


def window_upper_rf(k: int, variant: str = I.Q_ONLY) -> RationalFunction:
    """Full right-hand side; the 3q variant carries the extra x^4/((1-x^2)(1-x^4))."""
    f = window_rf(k, variant)
    if variant == I.THREE_Q:
        f = Pt.two_multinomial_gf() + f
    return f


def window_upper(x, k: int, variant: str = I.Q_ONLY) -> BoundResult:
    """Upper bound from the windowed inequality for the given weight, normalised to the product."""
    x = as_point(x, GOLDEN)
    value = window_upper_rf(k, variant).eval(x)
    m = WEIGHT_MULTIPLIER[variant]
    return BoundResult(value / m, "upper", PRODUCT, SUM_COEFFICIENT[variant],
                       f"window bound weight={variant} k={k}", value=value)


def two_weight_upper(x, k: int) -> BoundResult:
    return window_upper(x, k, I.TWO_Q)


def three_weight_upper(x, k: int) -> BoundResult:
    return window_upper(x, k, I.THREE_Q)


def pointwise_upper(x, k: int, terms: int = 30) -> BoundResult:
    """Certified numeric upper bound upper_sequence + (k-1)/k * L(x).hi on the product."""
    b = upper_sequence(x, k)
    value = b.certified_value(enclose_odd_divisor_sum(x, terms))
    return BoundResult(value, "upper", PRODUCT, Fraction(0), f"pointwise upper k={k}, terms={terms}")


def window_step_gap(x, k: int) -> Fraction:
    """x + x(1+x) sum_{n<=2k}(F_n - S_{n,k}) x^n - sum_{n<=2k+2}(F_n - S_{n,k+1}) x^n."""
    x = Fraction(x)
    f = I.fib(2 * k + 2)
    tab = I.tables(2 * k + 2)

    def part(kk):
        return sum((Fraction(f[n] - I.window_sum(I.Q_ONLY, kk, n, tab)) * x**n for n in range(2 * kk + 1)),
                   Fraction(0))

    return x + x * (1 + x) * part(k) - part(k + 1)


# -- sandwich ---------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class SandwichReport:
    x: Fraction
    k: int
    terms: int
    lower: Fraction
    upper: Fraction
    product: Enclosure | None
    odd_sum: Enclosure
    status: str
    notes: list[str] = field(default_factory=list)


def sandwich(x, k: int, terms: int) -> SandwichReport:
    """Check lower_sequence + L < prod < upper_sequence + (k-1)/k L with certified enclosures.

    ``pass`` means both strict inequalities are certified after pushing every
    enclosure to its worst end; ``fail`` means a violation is certified;
    otherwise ``inconclusive``.
    """
    x = as_point(x, GOLDEN)
    a, b = lower_sequence(x, k), upper_sequence(x, k)
    s = enclose_odd_divisor_sum(x, terms)
    lower, upper = a.certified_value(s), b.certified_value(s)
    notes: list[str] = []
    try:
        prod = enclose_distinct_product(x, terms)
    except TailDiverges as exc:
        return SandwichReport(x, k, terms, lower, upper, None, s, INCONCLUSIVE, [str(exc)])
    lower_hi = a.strict_value(s)
    upper_lo = b.strict_value(s)
    if lower > prod.hi or upper < prod.lo:
        status = FAIL
    elif lower_hi < prod.lo and prod.hi < upper_lo:
        status = PASS
    else:
        status = INCONCLUSIVE
        notes.append(f"product width {format_decimal(prod.width, 20, 'up')}, "
                     f"sum width {format_decimal(s.width, 20, 'up')}")
    return SandwichReport(x, k, terms, lower, upper, prod, s, status, notes)


# -- published constants at x = 1/4 -------------------------------------------

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class ConstantCheck:
    name: str
    computed: Fraction
    expected: Fraction | None
    sum_coefficient: Fraction
    side: str
    target: str = PRODUCT

    @property
    def passed(self) -> bool | None:
        if self.expected is None:
            return None
        return self.computed == self.expected


EXPECTED_AT_QUARTER = {
    "Bk k=1": Fraction(15, 11),
    "Bk k=2": Fraction(13, 11),
    "Bk k=3": Fraction(141701, 126225),
    "corollary1 P={3}": Fraction(69983, 69615),
    "corollary2 P={3}": Fraction(1347596, 3828825),
    "Rk k=4": Fraction(9364, 6875),
    "Rk k=5": Fraction(46754, 34375),
    "Rk k=6": Fraction(233506, 171875),
    "th6 k=5": Fraction(81239, 68750),
    "th6 k=6": Fraction(406118, 171875),
    "th7 k=6": Fraction(88561442, 78890625),
}


def constant_checks(x=QUARTER) -> list[ConstantCheck]:
    """Every published bound constant, recomputed at ``x``; expected values exist only at 1/4."""
    x = as_point(x, GOLDEN)
    results = [
        ("Bk k=1", upper_sequence(x, 1)),
        ("Bk k=2", upper_sequence(x, 2)),
        ("Bk k=3", upper_sequence(x, 3)),
        ("corollary1 P={3}", prime_power_lower(x, (3,))),
        ("corollary2 P={3}", odd_divisor_sum_upper(x, (3,))),
        ("Rk k=4", window_upper(x, 4)),
        ("Rk k=5", window_upper(x, 5)),
        ("Rk k=6", window_upper(x, 6)),
        ("th6 k=5", two_weight_upper(x, 5)),
        ("th6 k=6", two_weight_upper(x, 6)),
        ("th7 k=6", three_weight_upper(x, 6)),
    ]
    out = []
    for name, r in results:
        expected = EXPECTED_AT_QUARTER[name] if x == QUARTER else None
        out.append(ConstantCheck(name, r.constant, expected, r.sum_coefficient, r.side, r.target))
    return out


SIXTEEN_TERM_LOWER = Fraction(135553519, 10**8)


def sixteen_term_lower(x=QUARTER) -> Fraction:
    """Lower constant for subset {3} plus the first 16 terms of the odd-divisor sum."""
    return prime_power_lower(x, (3,)).constant + enclose_odd_divisor_sum(x, 16).lo


def certified_bound(check: ConstantCheck, odd_sum: Enclosure, bound: Fraction | None = None):
    """(weak, strong) numeric ends of a bound of the form constant + c * L(x)."""
    c = check.computed if bound is None else bound
    if not check.sum_coefficient:
        return c, c
    lo = c + check.sum_coefficient * odd_sum.lo
    hi = c + check.sum_coefficient * odd_sum.hi
    return (hi, lo) if check.side == "upper" else (lo, hi)
