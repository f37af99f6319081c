"""Exact truncated power series and rational functions over Q.

Coefficients are always :class:`fractions.Fraction`.  Integer-valued inputs
take a fast path through plain ``int`` convolution, which matters for the
order-1000 products used by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

UNIT = "unit-interval"
GOLDEN = "golden-interval"


class ZeroConstantDenominator(ValueError):
    pass


class DenominatorVanishes(ZeroDivisionError):
    pass


class DomainError(ValueError):
    pass


# -- rational <-> text ------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal strings are rejected."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational of the form p/q: {text!r}") from None


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Rational, digits: int, rounding: str = "down") -> str:
    """Render ``value`` with ``digits`` decimals, rounded toward -inf or +inf.

    Directed rounding keeps printed bounds certified: lower ends are rounded
    down and upper ends up.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    value = Fraction(value)
    scaled = value * 10**digits
    if rounding == "down":
        n = scaled.numerator // scaled.denominator
    elif rounding == "up":
        n = -((-scaled.numerator) // scaled.denominator)
    else:
        raise ValueError(f"unknown rounding {rounding!r}")
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


# -- dense polynomial helpers (tuples of Fraction, index = degree) ----------

def _as_coeffs(values: Iterable[Rational]) -> tuple[Fraction, ...]:
    return tuple(v if type(v) is Fraction else Fraction(v) for v in values)


def poly_trim(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    end = len(p)
    while end and p[end - 1] == 0:
        end -= 1
    return tuple(p[:end])


def poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_neg(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(-c for c in a)


def poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return poly_add(a, poly_neg(b))


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], limit: int) -> list[Fraction]:
    """Cauchy product of ``a`` and ``b`` keeping degrees ``< limit``."""
    if not a or not b or limit <= 0:
        return []
    size = min(len(a) + len(b) - 1, limit)
    if all(c.denominator == 1 for c in a) and all(c.denominator == 1 for c in b):
        ai = [c.numerator for c in a]
        bi = [c.numerator for c in b]
        acc = [0] * size
        for i, x in enumerate(ai):
            if x == 0 or i >= size:
                continue
            for j, y in enumerate(bi[: size - i]):
                if y:
                    acc[i + j] += x * y
        return [Fraction(v) for v in acc]
    acc = [Fraction(0)] * size
    for i, x in enumerate(a):
        if x == 0 or i >= size:
            continue
        for j, y in enumerate(b[: size - i]):
            if y:
                acc[i + j] += x * y
    return acc


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return poly_trim(_convolve(a, b, len(a) + len(b)))


def poly_pow(a: Sequence[Fraction], e: int) -> tuple[Fraction, ...]:
    out: tuple[Fraction, ...] = (Fraction(1),)
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def poly_eval(p: Sequence[Fraction], x: Rational) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(poly_trim(a))
    if len(rem) < len(b):
        return (), tuple(rem)
    quot = [Fraction(0)] * (len(rem) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(rem) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] / lead
        quot[shift] = c
        if c:
            for i, bc in enumerate(b):
                rem[shift + i] -= c * bc
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Monic gcd over Q (Euclid)."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def monomial(degree: int, coeff: Rational = 1) -> tuple[Fraction, ...]:
    return tuple([Fraction(0)] * degree + [Fraction(coeff)])


def binomial_poly(degree: int, sign: int = -1) -> tuple[Fraction, ...]:
    """``1 + sign * x**degree``."""
    if degree == 0:
        return (Fraction(1 + sign),)
    return tuple([Fraction(1)] + [Fraction(0)] * (degree - 1) + [Fraction(sign)])


# -- truncated series -------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known modulo ``x**(order+1)``.

    Binary operations truncate to the smaller of the two orders.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Rational], order: int | None = None):
        values = list(_as_coeffs(coeffs))
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            values = values[: order + 1]
            values.extend([Fraction(0)] * (order + 1 - len(values)))
        if not values:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_ints(cls, values: Sequence[int]) -> "TruncatedSeries":
        return cls([Fraction(v) for v in values])

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs])
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return TruncatedSeries(_convolve(self.coeffs, other.coeffs, order + 1), order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``x**k`` keeping the same order."""
        if k < 0:
            raise ValueError("negative shift would need a Laurent series")
        return TruncatedSeries([0] * k + list(self.coeffs), self.order)

    def reciprocal(self) -> "TruncatedSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroConstantDenominator("series has zero constant term")
        return expand_rational(RationalFunction((1,), self.coeffs), self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        if other.coeffs[0] == 0:
            raise ZeroConstantDenominator("series has zero constant term")
        return expand_rational(RationalFunction(self.coeffs, other.coeffs), order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def eval(self, x: Rational) -> Fraction:
        return poly_eval(self.coeffs, x)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


# -- rational functions -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class RationalFunction:
    """``numerator / denominator`` with ``denominator(0) != 0``.

    Equality is equality as rational functions (cross multiplication), so
    unreduced representations of the same function compare equal.
    """

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]

    def __init__(self, numerator: Iterable[Rational], denominator: Iterable[Rational] = (1,)):
        num = poly_trim(_as_coeffs(numerator))
        den = poly_trim(_as_coeffs(denominator))
        if not den or den[0] == 0:
            raise ZeroConstantDenominator("denominator must have a nonzero constant term")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def polynomial(cls, coeffs: Iterable[Rational]) -> "RationalFunction":
        return cls(coeffs, (1,))

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(
            poly_add(poly_mul(self.numerator, other.denominator),
                     poly_mul(other.numerator, self.denominator)),
            poly_mul(self.denominator, other.denominator),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(poly_neg(self.numerator), self.denominator)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(poly_mul(self.numerator, other.numerator),
                                poly_mul(self.denominator, other.denominator))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        return RationalFunction(poly_mul(self.numerator, other.denominator),
                                poly_mul(self.denominator, other.numerator))

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return poly_mul(self.numerator, other.denominator) == poly_mul(other.numerator, self.denominator)

    def __hash__(self):
        n = self.normalized()
        return hash((n.numerator, n.denominator))

    def normalized(self) -> "RationalFunction":
        """Cancel the polynomial gcd and scale the denominator to constant term 1."""
        g = poly_gcd(self.numerator, self.denominator)
        num, den = self.numerator, self.denominator
        if len(g) > 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        c = den[0]
        return RationalFunction([a / c for a in num], [b / c for b in den])

    def eval(self, x: Rational) -> Fraction:
        d = poly_eval(self.denominator, x)
        if d == 0:
            raise DenominatorVanishes(f"denominator vanishes at x={format_rational(x)}")
        return poly_eval(self.numerator, x) / d

    def expand(self, order: int) -> TruncatedSeries:
        return expand_rational(self, order)


def _as_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalFunction((value,))
    raise TypeError(f"cannot treat {type(value).__name__} as a rational function")


def expand_rational(f: RationalFunction, order: int) -> TruncatedSeries:
    """Power series of ``f`` to ``order`` via the recurrence its denominator induces."""
    if order < 0:
        raise ValueError("order must be >= 0")
    den = f.denominator
    if not den or den[0] == 0:
        raise ZeroConstantDenominator("denominator must have a nonzero constant term")
    num = f.numerator
    taps = [(i, d) for i, d in enumerate(den) if i and d]
    d0 = den[0]
    integral = (
        abs(d0) == 1
        and all(d.denominator == 1 for _, d in taps)
        and all(c.denominator == 1 for c in num)
    )
    if integral:
        s = d0.numerator
        ti = [(i, d.numerator) for i, d in taps]
        ni = [c.numerator for c in num]
        out_i: list[int] = []
        for n in range(order + 1):
            acc = ni[n] if n < len(ni) else 0
            for i, d in ti:
                if i > n:
                    break
                acc -= d * out_i[n - i]
            out_i.append(acc * s)
        return TruncatedSeries([Fraction(v) for v in out_i])
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for i, d in taps:
            if i > n:
                break
            acc -= d * out[n - i]
        out.append(acc / d0)
    return TruncatedSeries(out)


# -- the specific generating functions --------------------------------------

def pochhammer_neg(order: int) -> TruncatedSeries:
    """Truncation of prod_{j>=1} (1 + x**j); coefficient n is q(n)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    c[0] = 1
    for j in range(1, order + 1):
        for i in range(order, j - 1, -1):
            c[i] += c[i - j]
    return TruncatedSeries.from_ints(c)


def odd_pochhammer(order: int) -> TruncatedSeries:
    """Truncation of prod_{j>=0} (1 - x**(2j+1))."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    c[0] = 1
    for j in range(1, order + 1, 2):
        for i in range(order, j - 1, -1):
            c[i] -= c[i - j]
    return TruncatedSeries.from_ints(c)


def lambert_odd_divisors(order: int) -> TruncatedSeries:
    """Truncation of sum_{m>=1} x**m / (1 - x**(2m)); coefficient n counts odd divisors."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    for m in range(1, order + 1):
        for e in range(m, order + 1, 2 * m):
            c[e] += 1
    return TruncatedSeries.from_ints(c)


def fibonacci_gf() -> RationalFunction:
    return RationalFunction((0, 1), (1, -1, -1))


def floor_quotient_gf(k: int) -> RationalFunction:
    """x**k / ((1-x)(1-x**k)), whose coefficients are floor(n/k)."""
    if k < 1:
        raise ValueError("k must be positive")
    return RationalFunction(monomial(k), poly_mul(binomial_poly(1), binomial_poly(k)))


def eval_at(f, point) -> Fraction:
    """Exact value of a rational function or (the polynomial of) a truncated series."""
    x = point.x if isinstance(point, EvalPoint) else Fraction(point)
    if isinstance(f, (RationalFunction, TruncatedSeries)):
        return f.eval(x)
    raise TypeError(f"cannot evaluate {type(f).__name__}")


# -- evaluation points ------------------------------------------------------

@dataclass(frozen=True)
class EvalPoint:
    x: Fraction
    domain: str = UNIT

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        check_domain(self.x, self.domain)

    @classmethod
    def unit(cls, x: Rational | str) -> "EvalPoint":
        return cls(_to_fraction(x), UNIT)

    @classmethod
    def golden(cls, x: Rational | str) -> "EvalPoint":
        return cls(_to_fraction(x), GOLDEN)

    def require(self, domain: str) -> Fraction:
        check_domain(self.x, domain)
        return self.x


def _to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or 'p/q' string")
    return Fraction(x)


def check_domain(x: Fraction, domain: str) -> None:
    """Raise DomainError naming the failed predicate."""
    if domain not in (UNIT, GOLDEN):
        raise ValueError(f"unknown domain {domain!r}")
    if x <= 0:
        raise DomainError("x <= 0")
    if domain == UNIT and x >= 1:
        raise DomainError("x >= 1")
    if domain == GOLDEN and x + x * x >= 1:
        raise DomainError("x+x² >= 1")


def as_point(x, domain: str) -> Fraction:
    """Validate ``x`` (EvalPoint, Fraction, int or 'p/q') against ``domain``."""
    if isinstance(x, EvalPoint):
        return x.require(domain)
    value = _to_fraction(x)
    check_domain(value, domain)
    return value
