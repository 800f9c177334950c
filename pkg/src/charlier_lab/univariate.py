"""Reference univariate families: Charlier, Krawtchouk, oscillator wavefunctions.

Normalizations
--------------
Charlier polynomials are fixed by the generating function

    exp(t) * (1 - t/a)**x = sum_n C_n(x; a) t**n / n!,

equivalently C_n(x; a) = 2F0(-n, -x; ; -1/a).  They are orthogonal on the
non-negative integers against the Poisson weight a**x exp(-a) / x! with
squared norm n! / a**n.

Krawtchouk polynomials use the hypergeometric normalization

    K_n(x; p, N) = 2F1(-n, -x; -N; 1/p),        0 <= n <= N,

which takes the value 1 at n = 0.  This is the convention under which the
bivariate decomposition in :mod:`charlier_lab.bivariate` balances exactly.

Oscillator wavefunctions Psi_n are the L2-normalized Hermite functions; they
are evaluated through the normalized three-term recurrence

    Psi_{n+1} = x sqrt(2/(n+1)) Psi_n - sqrt(n/(n+1)) Psi_{n-1},

which avoids the overflow of the raw Hermite polynomials and of 2**n n!.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .combinat import compensated_sum, pochhammer
from .reports import VerifyReport

#: Degree above which Charlier evaluation switches from the finite
#: hypergeometric sum to the three-term recurrence.
_CHARLIER_SUM_MAX_DEGREE = 30


def _validate_charlier_param(a) -> None:
    if not a > 0:
        raise ValueError(f"Charlier parameter must be positive, got a={a}")


def _validate_krawtchouk_param(p, n_lattice: int) -> None:
    if not (0 < p < 1):
        raise ValueError(f"Krawtchouk parameter must satisfy 0 < p < 1, got p={p}")
    if n_lattice < 0:
        raise ValueError(f"Krawtchouk lattice size must be non-negative, got N={n_lattice}")


def _charlier_exact(n: int, x: int, a: Fraction) -> Fraction:
    # hypergeometric sum in exact rationals; every float is a rational, so
    # the alternating cancellation costs no digits and the result is rounded
    # exactly once on conversion back
    total = Fraction(0)
    z = Fraction(-1) / a
    jmax = min(n, x) if x >= 0 else n
    for j in range(jmax + 1):
        total += Fraction(pochhammer(-n, j) * pochhammer(-x, j), math.factorial(j)) * z**j
    return total


def charlier(n: int, x, a):
    """Charlier polynomial C_n(x; a) in the generating-function normalization."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    _validate_charlier_param(a)
    if n <= _CHARLIER_SUM_MAX_DEGREE:
        if (
            isinstance(x, (int, float))
            and float(x).is_integer()
            and isinstance(a, (int, float))
        ):
            return float(_charlier_exact(n, int(x), Fraction(a)))
        terms = []
        term = 1.0
        for j in range(n + 1):
            terms.append(term)
            if j < n:
                term = term * (-n + j) * (-x + j) * (-1.0 / a) / (j + 1)
        return compensated_sum(terms)
    # O(n) recurrence: a C_{n+1} = (n + a - x) C_n - n C_{n-1}
    prev, cur = 1.0, 1.0 - x / a
    for j in range(1, n):
        prev, cur = cur, ((j + a - x) * cur - j * prev) / a
    return cur


def krawtchouk(n: int, x, p, n_lattice: int):
    """Krawtchouk polynomial K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)."""
    _validate_krawtchouk_param(p, n_lattice)
    if n < 0 or n > n_lattice:
        raise ValueError(f"degree must satisfy 0 <= n <= N, got n={n}, N={n_lattice}")
    terms = []
    term = 1.0
    for j in range(n + 1):
        terms.append(term)
        if j < n:
            term = term * (-n + j) * (-x + j) / ((-n_lattice + j) * (j + 1) * p)
    return compensated_sum(terms)


def hermite_wavefunction(n: int, x: float) -> float:
    """L2-normalized oscillator wavefunction Psi_n(x)."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    psi = math.pi ** -0.25 * math.exp(-x * x / 2.0)
    if n == 0:
        return psi
    prev, cur = psi, x * math.sqrt(2.0) * psi
    for j in range(1, n):
        prev, cur = cur, x * math.sqrt(2.0 / (j + 1)) * cur - math.sqrt(j / (j + 1)) * prev
    return cur


def hermite_wave_envelope_free(nmax: int, x: float) -> List[float]:
    """Values Psi_n(x) * exp(x**2 / 2) for all n <= nmax.

    The Gaussian envelope is stripped so tensor quadratures can regroup it;
    the recurrence is the same as for the full wavefunction.
    """
    out = [math.pi ** -0.25]
    if nmax >= 1:
        out.append(x * math.sqrt(2.0) * out[0])
    for j in range(1, nmax):
        out.append(x * math.sqrt(2.0 / (j + 1)) * out[j] - math.sqrt(j / (j + 1)) * out[j - 1])
    return out


def gauss_hermite_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes and weights for the weight exp(-x**2)."""
    if nodes < 1:
        raise ValueError("need at least one quadrature node")
    return np.polynomial.hermite.hermgauss(nodes)


def poisson_weights(a, cutoff: int) -> np.ndarray:
    """Poisson(a) masses for x = 0..cutoff, built by stable ratio recursion."""
    _validate_charlier_param(a)
    w = np.empty(cutoff + 1)
    w[0] = math.exp(-a)
    for x in range(cutoff):
        w[x + 1] = w[x] * a / (x + 1)
    return w


def poisson_tail_estimate(a, cutoff: int) -> float:
    """Upper estimate of the Poisson mass beyond the cutoff (geometric bound)."""
    w = poisson_weights(a, cutoff + 1)
    ratio = a / (cutoff + 2)
    if ratio >= 0.5:
        return float("inf")
    return float(w[cutoff + 1] / (1.0 - ratio))


def charlier_orthocheck(nmax: int, a, cutoff: int, tol: float = 1e-10) -> VerifyReport:
    """Check sum_x w_x C_n C_m = a**-n n! delta_nm by direct summation.

    The residual matrix is reported in ``extras['residual_matrix']``; the
    tail bound estimates what the truncation at ``cutoff`` may have dropped,
    using a geometric bound on the Poisson tail times the polynomial values
    on the boundary.
    """
    if nmax < 0 or cutoff < 1:
        raise ValueError("nmax must be >= 0 and cutoff >= 1")
    _validate_charlier_param(a)
    x = np.arange(cutoff + 1, dtype=float)
    w = poisson_weights(a, cutoff)
    values = np.empty((nmax + 1, cutoff + 1))
    values[0] = 1.0
    if nmax >= 1:
        values[1] = 1.0 - x / a
    for n in range(1, nmax):
        values[n + 1] = ((n + a - x) * values[n] - n * values[n - 1]) / a

    gram = values @ (w[:, None] * values.T)
    target = np.diag([math.factorial(n) / a**n for n in range(nmax + 1)])
    residual = np.abs(gram - target)
    worst = np.unravel_index(int(np.argmax(residual)), residual.shape)

    shell_max = float(np.max(np.abs(values[:, -1])) ** 2)
    tail = poisson_tail_estimate(a, cutoff) * shell_max * 2.0  # margin for growth

    return VerifyReport.build(
        identity="univariate Charlier orthogonality",
        max_residual=float(residual.max()),
        tolerance=tol,
        grid=f"n,m <= {nmax}, x <= {cutoff}, a={a}",
        tail_bound=tail,
        worst_case=f"(n,m)={worst}",
        extras={"residual_matrix": residual.tolist()},
    )
