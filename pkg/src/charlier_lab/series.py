"""Truncated multivariate power series for generating-function extraction.

A :class:`TruncatedSeries` stores the coefficients of a power series in
``nvars`` variables up to a fixed total degree.  All arithmetic truncates
consistently at that degree, so extracting the coefficient of a monomial of
total degree <= max_degree from a product of such series is exact (up to
floating-point rounding): no analytic continuation, no hidden tails.

The two shapes the polynomial modules need are

* ``exp_linear``  -- exp(c1 x1 + ... + cd xd), expanded termwise as the
  product of univariate exponential series, and
* ``binomial_power`` -- (1 + c1 x1 + ... + cd xd)**M for an arbitrary
  (possibly huge, possibly non-integer) exponent M, expanded through the
  falling-factorial binomial series, which terminates exactly for integer
  M below the truncation degree.

Coefficients are generic scalars: floats by default, but mpmath values pass
through untouched, which is how the optional extended-precision path works.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Tuple

Key = Tuple[int, ...]


@dataclass
class TruncatedSeries:
    nvars: int
    max_degree: int
    coeffs: Dict[Key, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("nvars must be >= 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        for key in self.coeffs:
            if len(key) != self.nvars or min(key) < 0 or sum(key) > self.max_degree:
                raise ValueError(f"coefficient key {key} violates the truncation invariant")

    @classmethod
    def one(cls, nvars: int, max_degree: int) -> "TruncatedSeries":
        return cls(nvars, max_degree, {(0,) * nvars: 1.0})

    @classmethod
    def exp_linear(cls, lin, max_degree: int) -> "TruncatedSeries":
        """exp(sum_k lin[k] * x_k) truncated at total degree max_degree."""
        nvars = len(lin)
        out: Dict[Key, object] = {}

        def fill(axis: int, key: list, value, degree_left: int) -> None:
            if axis == nvars:
                out[tuple(key)] = value
                return
            c = lin[axis]
            power = 1
            for j in range(degree_left + 1):
                key.append(j)
                fill(axis + 1, key, value * power / factorial(j), degree_left - j)
                key.pop()
                power = power * c

        fill(0, [], 1.0, max_degree)
        return cls(nvars, max_degree, out)

    @classmethod
    def binomial_power(cls, lin, exponent, max_degree: int) -> "TruncatedSeries":
        """(1 + sum_k lin[k] * x_k)**exponent truncated at total degree max_degree."""
        nvars = len(lin)
        out: Dict[Key, object] = {(0,) * nvars: 1.0}
        lin_pow: Dict[Key, object] = {(0,) * nvars: 1.0}
        bc = 1.0  # falling-factorial binomial coefficient C(exponent, j)
        for j in range(1, max_degree + 1):
            bc = bc * (exponent - (j - 1)) / j
            nxt: Dict[Key, object] = {}
            for key, v in lin_pow.items():
                if sum(key) + 1 > max_degree:
                    continue
                for axis in range(nvars):
                    kk = key[:axis] + (key[axis] + 1,) + key[axis + 1:]
                    if kk in nxt:
                        nxt[kk] = nxt[kk] + v * lin[axis]
                    else:
                        nxt[kk] = v * lin[axis]
            lin_pow = nxt
            for key, v in lin_pow.items():
                term = bc * v
                if key in out:
                    out[key] = out[key] + term
                else:
                    out[key] = term
        return cls(nvars, max_degree, out)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.nvars != other.nvars:
            raise ValueError("cannot multiply series in different numbers of variables")
        degree = min(self.max_degree, other.max_degree)
        out: Dict[Key, object] = {}
        for p, a in self.coeffs.items():
            dp = sum(p)
            if dp > degree:
                continue
            for q, b in other.coeffs.items():
                if dp + sum(q) > degree:
                    continue
                key = tuple(x + y for x, y in zip(p, q))
                if key in out:
                    out[key] = out[key] + a * b
                else:
                    out[key] = a * b
        return TruncatedSeries(self.nvars, degree, out)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.nvars != other.nvars:
            raise ValueError("cannot add series in different numbers of variables")
        degree = min(self.max_degree, other.max_degree)
        out = {k: v for k, v in self.coeffs.items() if sum(k) <= degree}
        for k, v in other.coeffs.items():
            if sum(k) <= degree:
                out[k] = out[k] + v if k in out else v
        return TruncatedSeries(self.nvars, degree, out)

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries(
            self.nvars, self.max_degree, {k: v * factor for k, v in self.coeffs.items()}
        )

    def coefficient(self, key: Key):
        """Coefficient of the monomial x**key (0 when absent)."""
        if len(key) != self.nvars:
            raise ValueError(f"key {key} has wrong arity for {self.nvars}-variable series")
        if sum(key) > self.max_degree:
            raise ValueError(f"key {key} lies beyond the truncation degree {self.max_degree}")
        return self.coeffs.get(tuple(key), 0.0)

    def evaluate(self, point):
        """Evaluate the truncated polynomial at the given point."""
        total = 0.0
        for key, v in self.coeffs.items():
            term = v
            for x, p in zip(point, key):
                for _ in range(p):
                    term = term * x
            total = total + term
        return total
