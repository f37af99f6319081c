"""Exact partition counts into odd parts, Fibonacci-based bound families, and certified checks."""

from .series import (
    DomainError,
    EvalPoint,
    RationalFunction,
    TruncatedSeries,
    eval_at,
    expand_rational,
    format_rational,
    lambert_odd_divisors,
    parse_rational,
    pochhammer_neg,
    series_add,
    series_mul,
)
from .partitions import (
    OddPartition,
    QTable,
    enumerate_odd_partitions,
    multinomial,
    multinomial_histogram,
    odd_divisor_count,
    prime_power_multinomial_count,
    prime_powers_up_to,
    q,
    two_multinomial_count,
)
from .identities import fib, run_suite, window_sum
from .bounds import (
    lower_sequence,
    upper_sequence,
    window_upper,
    window_rf,
    prime_power_lower,
    odd_divisor_sum_upper,
    enclose_distinct_product,
    enclose_odd_divisor_sum,
    sandwich,
    two_weight_upper,
    three_weight_upper,
)

__version__ = "0.1.0"
