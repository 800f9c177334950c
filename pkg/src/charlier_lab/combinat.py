"""Exact combinatorial primitives and compensated floating-point summation.

Everything here is pure and stateless.  Factorials and binomials are exact
Python integers; callers convert to float at the last moment so that ratios
of factorials cancel before any rounding happens.
"""

from __future__ import annotations

import math
from typing import Iterable

#: Largest n for which factorial(n) is served.  The polynomial families in
#: this package are desk-scale objects; asking for 501! almost certainly
#: means an index bug upstream.
FACTORIAL_CAP = 500


def factorial(n: int, cap: int = FACTORIAL_CAP) -> int:
    """Exact n! for 0 <= n <= cap."""
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    if n > cap:
        raise ValueError(f"factorial({n}) exceeds the configured cap {cap}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero when k is negative or larger than n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n_total: int, m: int, n: int) -> int:
    """Trinomial coefficient n_total! / (m! n! (n_total-m-n)!)."""
    if min(n_total, m, n) < 0:
        raise ValueError("multinomial arguments must be non-negative")
    if m + n > n_total:
        raise ValueError(f"multinomial requires m + n <= N, got {m}+{n} > {n_total}")
    return math.comb(n_total, m) * math.comb(n_total - m, n)


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Exact for integer a (the product passes through zero when a is a
    negative integer and n exceeds |a|).
    """
    if n < 0:
        raise ValueError(f"pochhammer requires n >= 0, got {n}")
    out = 1
    for j in range(n):
        out = out * (a + j)
    return out


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum with Neumaier (Kahan-Babuska) compensation.

    The error stays at the level of a couple of roundings of the final
    result regardless of how many terms are added, which is what the
    alternating hypergeometric sums downstream rely on.
    """
    total = 0.0
    comp = 0.0
    for v in terms:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp
