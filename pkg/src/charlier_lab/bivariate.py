"""Bivariate Charlier polynomials attached to a planar Euclidean motion.

For a motion (theta, alpha, beta) the family C_{m,n}(i, k) is defined by the
generating function

    exp(-x omega) exp(-y zeta)
        * [1 + (x/alpha) cos t + (y/alpha) sin t]^i
        * [1 - (x/beta)  sin t + (y/beta)  cos t]^k
    = sum_{m,n} C_{m,n}(i, k) x^m y^n / sqrt(m! n!),

with omega = alpha cos t - beta sin t and zeta = alpha sin t + beta cos t.
C_{m,n} is a polynomial of total degree m + n in (i, k), and the family is
orthonormal against the product Poisson weight with parameters alpha^2 and
beta^2.

Four independent evaluation routes are provided:

``eval_raising``
    The reference.  Builds the polynomial iteratively through the pair of
    degree-raising recurrences seeded by C_{0,0} = 1.  Needs only
    alpha, beta != 0 and divides by no trigonometric combination, so it is
    defined wherever the family itself is.

``eval_genfun``
    Expands the generating function as a truncated power series (exact
    finite computation) and reads off one coefficient.

``eval_hypergeometric``
    The closed-form Gelfand-Aomoto quadruple sum over the four coefficients
    u_ij, followed by the normalization change back from the monic-like
    S-form.  Undefined when any u-denominator (equivalently omega or zeta)
    is numerically zero.

``eval_decomposition``
    The expansion into products of univariate Charlier polynomials and one
    Krawtchouk factor, coming from splitting the motion into two
    translations and a rotation.  Undefined when sin(t) cos(t) is
    numerically zero, and gated on the same omega/zeta guard as the
    hypergeometric route (near those loci its normalization cross-checks
    are unavailable and the raising reference is the designated evaluator).

Verifiers for every structural identity of the family (orthogonality,
three-term recurrences, difference equations, lowering relations, duality,
integral representation) return :class:`~charlier_lab.reports.VerifyReport`
records.  Failures are reported, not raised.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .combinat import binomial, compensated_sum, factorial, pochhammer
from .euclid import (
    DegenerateParameterError,
    EuclidParams2,
    affine_map,
    derive,
    dual_params,
    u_denominator_description,
    weight_amp,
)
from .reports import EvalReport, VerifyReport
from .series import TruncatedSeries
from .univariate import (
    charlier,
    gauss_hermite_rule,
    krawtchouk,
    poisson_tail_estimate,
    poisson_weights,
)

Deg = Tuple[int, int]
Pt = Tuple[int, int]

#: Threshold on |sin(t) cos(t)| below which the decomposition route refuses.
DECOMP_TRIG_EPS = 1e-12

#: Weight-amplitude magnitude below which the integral verifier refuses to divide.
WEIGHT_UNDERFLOW = 1e-280

ALGORITHM_NAMES = ("raising", "genfun", "hyper", "decomp")


def _validate_index_pair(name: str, pair: Sequence[int]) -> Tuple[int, int]:
    a, b = pair
    if a < 0 or b < 0 or a != int(a) or b != int(b):
        raise ValueError(f"{name} must be a pair of non-negative integers, got {pair}")
    return int(a), int(b)


def _degrees_upto(degmax: int) -> List[Deg]:
    return [(m, n) for t in range(degmax + 1) for m in range(t, -1, -1) for n in (t - m,)]


# ---------------------------------------------------------------------------
# Raising reference
# ---------------------------------------------------------------------------

def raising_all(
    params: EuclidParams2,
    degmax: int,
    pt: Sequence[float],
    order: str = "m-first",
    _trig: Optional[Tuple[float, float]] = None,
    _sqrt: Callable = math.sqrt,
    _ab: Optional[Tuple[float, float]] = None,
) -> Dict[Deg, float]:
    """All values C_{m,n}(pt) for m + n <= degmax, by the raising recursion.

    The point may have real (even negative) coordinates: the recursion is a
    polynomial identity in (i, k).  ``order`` selects whether the first or
    the second degree index is raised first; the two orders agree to
    rounding and that agreement is asserted by the test suite.  The private
    ``_trig``/``_sqrt``/``_ab`` hooks let extended-precision callers feed
    mpmath scalars through the same kernel.
    """
    if degmax < 0:
        raise ValueError("degmax must be >= 0")
    if order not in ("m-first", "n-first"):
        raise ValueError(f"unknown raising order {order!r}")
    ct, st = _trig if _trig is not None else (math.cos(params.theta), math.sin(params.theta))
    a, b = _ab if _ab is not None else (params.alpha, params.beta)
    i0, k0 = pt[0], pt[1]
    lower_m = b * st - a * ct
    lower_n = -(a * st + b * ct)

    def raise_m(cur: dict, step: int, reach: int) -> dict:
        inv = 1.0 / _sqrt(step + 1)
        out = {}
        for (da, db), _ in cur.items():
            if da + db <= reach:
                i, k = i0 - da, k0 - db
                out[(da, db)] = (
                    (i / a) * ct * cur[(da + 1, db)]
                    - (k / b) * st * cur[(da, db + 1)]
                    + lower_m * cur[(da, db)]
                ) * inv
        return out

    def raise_n(cur: dict, step: int, reach: int) -> dict:
        inv = 1.0 / _sqrt(step + 1)
        out = {}
        for (da, db), _ in cur.items():
            if da + db <= reach:
                i, k = i0 - da, k0 - db
                out[(da, db)] = (
                    (i / a) * st * cur[(da + 1, db)]
                    + (k / b) * ct * cur[(da, db + 1)]
                    + lower_n * cur[(da, db)]
                ) * inv
        return out

    seed = {(da, db): 1.0 for da in range(degmax + 1) for db in range(degmax + 1 - da)}
    table: Dict[Deg, dict] = {(0, 0): seed}
    if order == "m-first":
        cur = seed
        for m in range(degmax):
            cur = raise_m(cur, m, degmax - (m + 1))
            table[(m + 1, 0)] = cur
        for m in range(degmax + 1):
            cur = table[(m, 0)]
            for n in range(degmax - m):
                cur = raise_n(cur, n, degmax - (m + n + 1))
                table[(m, n + 1)] = cur
    else:
        cur = seed
        for n in range(degmax):
            cur = raise_n(cur, n, degmax - (n + 1))
            table[(0, n + 1)] = cur
        for n in range(degmax + 1):
            cur = table[(0, n)]
            for m in range(degmax - n):
                cur = raise_m(cur, m, degmax - (m + n + 1))
                table[(m + 1, n)] = cur
    return {dkey: tab[(0, 0)] for dkey, tab in table.items()}


def eval_raising(params: EuclidParams2, deg: Deg, pt: Pt) -> float:
    """C_{m,n}(i, k) through the raising recursion (the reference evaluator)."""
    m, n = _validate_index_pair("deg", deg)
    i, k = _validate_index_pair("pt", pt)
    return raising_all(params, m + n, (i, k))[(m, n)]


def raising_grid(
    params: EuclidParams2,
    degmax: int,
    i_range: Tuple[int, int],
    k_range: Tuple[int, int],
) -> Dict[Deg, np.ndarray]:
    """All C_{m,n} with m + n <= degmax on an integer lattice box, vectorized.

    Returns arrays indexed [i - i_lo, k - k_lo].  The recursion runs on a
    grid extended downward by degmax on both axes; the margin rows are
    NaN-poisoned and sliced off, so an insufficient margin cannot leak
    silently into results.
    """
    i_lo, i_hi = i_range
    k_lo, k_hi = k_range
    if i_hi < i_lo or k_hi < k_lo:
        raise ValueError("empty lattice range")
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, b = params.alpha, params.beta
    shift = degmax
    ivals = np.arange(i_lo - shift, i_hi + 1, dtype=float)
    kvals = np.arange(k_lo - shift, k_hi + 1, dtype=float)
    big_i = ivals[:, None]
    big_k = kvals[None, :]

    def shifted_i(v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v)
        out[1:, :] = v[:-1, :]
        out[0, :] = np.nan
        return out

    def shifted_k(v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v)
        out[:, 1:] = v[:, :-1]
        out[:, 0] = np.nan
        return out

    lower_m = b * st - a * ct
    lower_n = -(a * st + b * ct)
    table: Dict[Deg, np.ndarray] = {
        (0, 0): np.ones((ivals.size, kvals.size))
    }
    for m in range(degmax):
        cur = table[(m, 0)]
        table[(m + 1, 0)] = (
            (big_i / a) * ct * shifted_i(cur)
            - (big_k / b) * st * shifted_k(cur)
            + lower_m * cur
        ) / math.sqrt(m + 1)
    for m in range(degmax + 1):
        for n in range(degmax - m):
            cur = table[(m, n)]
            table[(m, n + 1)] = (
                (big_i / a) * st * shifted_i(cur)
                + (big_k / b) * ct * shifted_k(cur)
                + lower_n * cur
            ) / math.sqrt(n + 1)
    return {dkey: v[shift:, shift:] for dkey, v in table.items()}


# ---------------------------------------------------------------------------
# Generating-function route
# ---------------------------------------------------------------------------

def _genfun_series(
    params: EuclidParams2,
    degmax: int,
    pt: Pt,
    alt_y_sign: bool = False,
    _trig: Optional[Tuple[float, float]] = None,
) -> TruncatedSeries:
    ct, st = _trig if _trig is not None else (math.cos(params.theta), math.sin(params.theta))
    a, b = params.alpha, params.beta
    i, k = pt
    omega = a * ct - b * st
    # alt_y_sign flips beta's sign in the y-exponential; used only by the
    # contraction study to decide empirically between the two candidate
    # sign conventions of the limit generating function.
    y_coeff = -(a * st - b * ct) if alt_y_sign else -(a * st + b * ct)
    exp_part = TruncatedSeries.exp_linear((-omega, y_coeff), degmax)
    factor_i = TruncatedSeries.binomial_power((ct / a, st / a), i, degmax)
    factor_k = TruncatedSeries.binomial_power((-st / b, ct / b), k, degmax)
    return exp_part * factor_i * factor_k


def genfun_all(
    params: EuclidParams2,
    degmax: int,
    pt: Pt,
    _alt_y_sign: bool = False,
) -> Dict[Deg, float]:
    """All C_{m,n}(pt) with m + n <= degmax via series coefficient extraction."""
    i, k = _validate_index_pair("pt", pt)
    series = _genfun_series(params, degmax, (i, k), alt_y_sign=_alt_y_sign)
    out = {}
    for m, n in _degrees_upto(degmax):
        scale = math.sqrt(factorial(m) * factorial(n))
        out[(m, n)] = series.coefficient((m, n)) * scale
    return out


def eval_genfun(params: EuclidParams2, deg: Deg, pt: Pt) -> float:
    """C_{m,n}(i, k) as sqrt(m! n!) times a truncated-series coefficient."""
    m, n = _validate_index_pair("deg", deg)
    i, k = _validate_index_pair("pt", pt)
    series = _genfun_series(params, m + n, (i, k))
    return series.coefficient((m, n)) * math.sqrt(factorial(m) * factorial(n))


# ---------------------------------------------------------------------------
# Hypergeometric route
# ---------------------------------------------------------------------------

def _require_u_coefficients(params: EuclidParams2, threshold: Optional[float]):
    der = derive(params, threshold)
    missing = [name for name, v in der.u_fields().items() if v is None]
    if missing:
        detail = ", ".join(f"{name} ({u_denominator_description(name)})" for name in missing)
        raise DegenerateParameterError(
            f"hypergeometric route undefined: vanishing denominator(s) {detail}; "
            "use the raising evaluator"
        )
    return der


def eval_hypergeometric(
    params: EuclidParams2, deg: Deg, pt: Pt, threshold: Optional[float] = None
) -> float:
    """C_{m,n}(i, k) via the quadruple hypergeometric sum in the u-coefficients.

    The sum S_{m,n}(i, k) runs over exponents (rho, sigma, mu, nu) of the
    four u-coefficients, truncated exactly by the Pochhammer zeros, and is
    converted back through

        C_{m,n} = (-1)^(m+n) / sqrt(m! n!) * omega^m zeta^n * S_{m,n}.
    """
    m, n = _validate_index_pair("deg", deg)
    i, k = _validate_index_pair("pt", pt)
    der = _require_u_coefficients(params, threshold)
    u11, u12, u21, u22 = der.u11, der.u12, der.u21, der.u22

    poch_m = [pochhammer(-m, r) for r in range(m + 1)]
    poch_n = [pochhammer(-n, r) for r in range(n + 1)]
    poch_i = [pochhammer(-i, r) for r in range(m + n + 1)]
    poch_k = [pochhammer(-k, r) for r in range(m + n + 1)]
    pow11 = [u11**r for r in range(m + 1)]
    pow12 = [u12**r for r in range(n + 1)]
    pow21 = [u21**r for r in range(m + 1)]
    pow22 = [u22**r for r in range(n + 1)]
    inv_fact = [1.0 / factorial(r) for r in range(m + n + 1)]

    terms = []
    for rho in range(m + 1):
        for mu in range(m + 1 - rho):
            pmm = poch_m[rho + mu]
            if pmm == 0:
                continue
            for sig in range(n + 1):
                pii = poch_i[rho + sig]
                if pii == 0:
                    continue
                for nu in range(n + 1 - sig):
                    c = pmm * poch_n[nu + sig] * pii * poch_k[mu + nu]
                    if c == 0:
                        continue
                    terms.append(
                        c
                        * inv_fact[rho] * inv_fact[sig] * inv_fact[mu] * inv_fact[nu]
                        * pow11[rho] * pow12[sig] * pow21[mu] * pow22[nu]
                    )
    s_value = compensated_sum(terms)
    sign = -1.0 if (m + n) % 2 else 1.0
    return sign * der.omega**m * der.zeta**n * s_value / math.sqrt(factorial(m) * factorial(n))


def s_polynomial(params: EuclidParams2, deg: Deg, pt: Pt) -> float:
    """The hypergeometric-normalized value S_{m,n}(i, k) (inverse monic map)."""
    m, n = _validate_index_pair("deg", deg)
    der = _require_u_coefficients(params, None)
    c_value = eval_raising(params, (m, n), pt)
    sign = -1.0 if (m + n) % 2 else 1.0
    return c_value * sign * math.sqrt(factorial(m) * factorial(n)) / (der.omega**m * der.zeta**n)


# ---------------------------------------------------------------------------
# Decomposition route
# ---------------------------------------------------------------------------

def eval_decomposition(
    params: EuclidParams2, deg: Deg, pt: Pt, threshold: Optional[float] = None
) -> float:
    """C_{m,n}(i, k) as a Charlier x Charlier x Krawtchouk sum.

    The (m+n+1)-term expansion comes from splitting the motion into the two
    translations followed by the rotation.  Refuses when sin(t) cos(t) is
    numerically zero (the prefactor and term ratio divide by it) or when
    the omega/zeta degeneracy gate trips.
    """
    m, n = _validate_index_pair("deg", deg)
    i, k = _validate_index_pair("pt", pt)
    ct, st = math.cos(params.theta), math.sin(params.theta)
    if abs(st * ct) <= DECOMP_TRIG_EPS:
        raise DegenerateParameterError(
            "decomposition undefined at sin(theta)cos(theta)=0; use the raising evaluator"
        )
    der = derive(params, threshold)
    missing = [name for name, v in der.u_fields().items() if v is None]
    if missing:
        raise DegenerateParameterError(
            "decomposition gated off: rotated translation "
            f"({u_denominator_description(missing[0])}) vanishes; use the raising evaluator"
        )
    a, b = params.alpha, params.beta
    total = m + n
    ratio = -b * st / (a * ct)
    p_kraw = st * st
    terms = []
    for v in range(total + 1):
        terms.append(
            binomial(total, v)
            * ratio**v
            * charlier(v, k, b * b)
            * charlier(total - v, i, a * a)
            * krawtchouk(n, v, p_kraw, total)
        )
    sign = -1.0 if total % 2 else 1.0
    pref = sign * a**total * ct**m * st**n / math.sqrt(factorial(m) * factorial(n))
    return pref * compensated_sum(terms)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_DISPATCH = {
    "raising": eval_raising,
    "genfun": eval_genfun,
    "hyper": eval_hypergeometric,
    "decomp": eval_decomposition,
}


def evaluate(params: EuclidParams2, deg: Deg, pt: Pt, algorithm: str = "genfun") -> EvalReport:
    """Evaluate with the selected algorithm and cross-check against the reference.

    The cross-check is the raising reference, except when the raising
    reference itself was requested, in which case the generating-function
    route (the other always-defined evaluator) supplies the comparison.
    """
    if algorithm not in _DISPATCH:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHM_NAMES}")
    value = _DISPATCH[algorithm](params, deg, pt)
    if algorithm == "raising":
        ref_alg = "genfun"
        ref = eval_genfun(params, deg, pt)
    else:
        ref_alg = "raising"
        ref = eval_raising(params, deg, pt)
    return EvalReport(
        value=value,
        algorithm=algorithm,
        error_estimate=abs(value - ref),
        reference_value=ref,
        reference_algorithm=ref_alg,
    )


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def _probe_sign_flips(
    residual: np.ndarray, terms: List[Tuple[str, np.ndarray]], tol: float
) -> List[str]:
    """Names of single terms whose sign flip would restore the identity.

    When a residual check fails systematically, this localizes which term
    of the relation disagrees instead of silently absorbing the mismatch.
    """
    culprits = []
    for label, arr in terms:
        if np.nanmax(np.abs(residual + 2.0 * arr)) <= tol:
            culprits.append(label)
    return culprits


def verify_orthogonality(
    params: EuclidParams2, degmax: int, cutoff: int, tol: float = 1e-8
) -> VerifyReport:
    """Check sum_{i,k} w_{i,k} C_{m,n} C_{m',n'} = delta delta by direct summation.

    The truncation tail bound multiplies a geometric estimate of the missing
    product-Poisson mass by the largest polynomial product observed on the
    boundary shell (times a factor 2 growth margin); it is a diagnostic
    estimate, not a certified bound.
    """
    degs = _degrees_upto(degmax)
    grid = raising_grid(params, degmax, (0, cutoff), (0, cutoff))
    values = np.stack([grid[d].ravel() for d in degs], axis=1)
    w_i = poisson_weights(params.alpha**2, cutoff)
    w_k = poisson_weights(params.beta**2, cutoff)
    w = np.outer(w_i, w_k).ravel()
    gram = values.T @ (w[:, None] * values)
    residual = np.abs(gram - np.eye(len(degs)))
    worst_flat = int(np.argmax(residual))
    worst = np.unravel_index(worst_flat, residual.shape)

    shell_mask = np.zeros((cutoff + 1, cutoff + 1), dtype=bool)
    shell_mask[-1, :] = True
    shell_mask[:, -1] = True
    shell_values = values[shell_mask.ravel(), :]
    shell_max = float(np.max(np.abs(shell_values))) ** 2
    mass = poisson_tail_estimate(params.alpha**2, cutoff) + poisson_tail_estimate(
        params.beta**2, cutoff
    )
    tail_bound = mass * shell_max * 2.0

    return VerifyReport.build(
        identity="bivariate orthogonality",
        max_residual=float(residual.max()),
        tolerance=tol,
        grid=f"m+n,m'+n' <= {degmax}, i,k <= {cutoff}",
        tail_bound=tail_bound,
        worst_case=f"degree pair ({degs[worst[0]]}, {degs[worst[1]]})",
        extras={
            "degrees": [list(d) for d in degs],
            "gram": gram.tolist(),
            "residual_matrix": residual.tolist(),
        },
    )


def verify_recurrence(
    params: EuclidParams2, degmax: int, ptmax: int, tol: float = 1e-9
) -> VerifyReport:
    """Residuals of both three-term recurrences in (m, n) on a lattice box."""
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, b = params.alpha, params.beta
    grid = raising_grid(params, degmax + 1, (0, ptmax), (0, ptmax))
    iv = np.arange(ptmax + 1, dtype=float)[:, None]
    kv = np.arange(ptmax + 1, dtype=float)[None, :]
    zero = np.zeros((ptmax + 1, ptmax + 1))

    def entry(m: int, n: int) -> np.ndarray:
        return grid[(m, n)] if m >= 0 and n >= 0 else zero

    worst_val = -1.0
    worst_at = ""
    flip_notes: List[str] = []
    for m, n in _degrees_upto(degmax):
        c = grid[(m, n)]
        terms_1 = [
            ("diagonal", (m * ct**2 + n * st**2 + a**2) * c),
            ("n-up", a * st * math.sqrt(n + 1) * entry(m, n + 1)),
            ("n-down", a * st * math.sqrt(n) * entry(m, n - 1)),
            ("m-up/n-down", st * ct * math.sqrt(n * (m + 1)) * entry(m + 1, n - 1)),
            ("m-up", a * ct * math.sqrt(m + 1) * entry(m + 1, n)),
            ("m-down", a * ct * math.sqrt(m) * entry(m - 1, n)),
            ("m-down/n-up", st * ct * math.sqrt(m * (n + 1)) * entry(m - 1, n + 1)),
        ]
        terms_2 = [
            ("diagonal", (m * st**2 + n * ct**2 + b**2) * c),
            ("n-up", b * ct * math.sqrt(n + 1) * entry(m, n + 1)),
            ("n-down", b * ct * math.sqrt(n) * entry(m, n - 1)),
            ("m-up/n-down", -st * ct * math.sqrt(n * (m + 1)) * entry(m + 1, n - 1)),
            ("m-up", -b * st * math.sqrt(m + 1) * entry(m + 1, n)),
            ("m-down", -b * st * math.sqrt(m) * entry(m - 1, n)),
            ("m-down/n-up", -st * ct * math.sqrt(m * (n + 1)) * entry(m - 1, n + 1)),
        ]
        for tag, lhs, terms in (("i-recurrence", iv * c, terms_1), ("k-recurrence", kv * c, terms_2)):
            residual = lhs - sum(arr for _, arr in terms)
            peak = float(np.max(np.abs(residual)))
            if peak > worst_val:
                worst_val = peak
                loc = np.unravel_index(int(np.argmax(np.abs(residual))), residual.shape)
                worst_at = f"{tag} at deg=({m},{n}), pt={tuple(int(x) for x in loc)}"
            if peak > tol:
                for label in _probe_sign_flips(residual, terms, tol):
                    flip_notes.append(f"{tag} deg=({m},{n}): flipping '{label}' restores the identity")

    extras = {"sign_flip_diagnostics": flip_notes} if flip_notes else {}
    return VerifyReport.build(
        identity="recurrence relations",
        max_residual=worst_val,
        tolerance=tol,
        grid=f"m+n <= {degmax}, i,k <= {ptmax}",
        worst_case=worst_at,
        extras=extras,
    )


def verify_difference(
    params: EuclidParams2, degmax: int, ptmax: int, tol: float = 1e-9
) -> VerifyReport:
    """Residuals of both difference equations in (i, k) on a lattice box.

    Values at i-1 = -1 or k-1 = -1 are the polynomial's values there
    (legitimate: each relation is a polynomial identity in the point), so
    the check runs at every lattice point including the boundary.
    """
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, b = params.alpha, params.beta
    der = derive(params)
    omega, zeta = der.omega, der.zeta
    ext = raising_grid(params, degmax, (-1, ptmax + 1), (-1, ptmax + 1))
    size = ptmax + 1

    def window(arr: np.ndarray, di: int, dk: int) -> np.ndarray:
        # value at (i + di, k + dk) for i, k in 0..ptmax; array origin is (-1, -1)
        return arr[1 + di : 1 + di + size, 1 + dk : 1 + dk + size]

    iv = np.arange(size, dtype=float)[:, None]
    kv = np.arange(size, dtype=float)[None, :]
    worst_val = -1.0
    worst_at = ""
    flip_notes: List[str] = []
    for m, n in _degrees_upto(degmax):
        arr = ext[(m, n)]
        c = window(arr, 0, 0)
        shifted = {
            (di, dk): window(arr, di, dk)
            for di, dk in ((-1, 0), (1, 0), (0, -1), (0, 1), (-1, 1), (1, -1))
        }
        terms_1 = [
            ("diagonal", (iv * ct**2 + kv * st**2 + omega**2) * c),
            ("i-down", -omega * ct * (iv / a) * shifted[(-1, 0)]),
            ("i-up", -omega * ct * a * shifted[(1, 0)]),
            ("i-down/k-up", -(iv * b / a) * ct * st * shifted[(-1, 1)]),
            ("k-down", omega * st * (kv / b) * shifted[(0, -1)]),
            ("k-up", omega * st * b * shifted[(0, 1)]),
            ("i-up/k-down", -(kv * a / b) * ct * st * shifted[(1, -1)]),
        ]
        terms_2 = [
            ("diagonal", (iv * st**2 + kv * ct**2 + zeta**2) * c),
            ("i-down", -zeta * st * (iv / a) * shifted[(-1, 0)]),
            ("i-up", -zeta * st * a * shifted[(1, 0)]),
            ("i-down/k-up", (iv * b / a) * ct * st * shifted[(-1, 1)]),
            ("k-down", -zeta * ct * (kv / b) * shifted[(0, -1)]),
            ("k-up", -zeta * ct * b * shifted[(0, 1)]),
            ("i-up/k-down", (kv * a / b) * ct * st * shifted[(1, -1)]),
        ]
        for tag, lhs, terms in (
            ("m-difference", m * c, terms_1),
            ("n-difference", n * c, terms_2),
        ):
            residual = lhs - sum(t for _, t in terms)
            peak = float(np.max(np.abs(residual)))
            if peak > worst_val:
                worst_val = peak
                loc = np.unravel_index(int(np.argmax(np.abs(residual))), residual.shape)
                worst_at = f"{tag} at deg=({m},{n}), pt={tuple(int(x) for x in loc)}"
            if peak > tol:
                for label in _probe_sign_flips(residual, terms, tol):
                    flip_notes.append(f"{tag} deg=({m},{n}): flipping '{label}' restores the identity")

    extras = {"sign_flip_diagnostics": flip_notes} if flip_notes else {}
    return VerifyReport.build(
        identity="difference equations",
        max_residual=worst_val,
        tolerance=tol,
        grid=f"m+n <= {degmax}, i,k <= {ptmax}",
        worst_case=worst_at,
        extras=extras,
    )


def verify_lowering(
    params: EuclidParams2, degmax: int, ptmax: int, tol: float = 1e-10
) -> VerifyReport:
    """Residuals of both degree-lowering relations on a lattice box."""
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, b = params.alpha, params.beta
    ext = raising_grid(params, degmax, (0, ptmax + 1), (0, ptmax + 1))
    size = ptmax + 1

    def window(arr: np.ndarray, di: int, dk: int) -> np.ndarray:
        return arr[di : di + size, dk : dk + size]

    zero = np.zeros((size, size))
    worst_val = -1.0
    worst_at = ""
    for m, n in _degrees_upto(degmax):
        c00 = window(ext[(m, n)], 0, 0)
        c10 = window(ext[(m, n)], 1, 0)
        c01 = window(ext[(m, n)], 0, 1)
        low_m = math.sqrt(m) * window(ext[(m - 1, n)], 0, 0) if m >= 1 else zero
        low_n = math.sqrt(n) * window(ext[(m, n - 1)], 0, 0) if n >= 1 else zero
        res_m = low_m - (a * ct * c10 - b * st * c01 + (b * st - a * ct) * c00)
        res_n = low_n - (a * st * c10 + b * ct * c01 - (a * st + b * ct) * c00)
        for tag, residual in (("m-lowering", res_m), ("n-lowering", res_n)):
            peak = float(np.max(np.abs(residual)))
            if peak > worst_val:
                worst_val = peak
                loc = np.unravel_index(int(np.argmax(np.abs(residual))), residual.shape)
                worst_at = f"{tag} at deg=({m},{n}), pt={tuple(int(x) for x in loc)}"
    return VerifyReport.build(
        identity="lowering relations",
        max_residual=worst_val,
        tolerance=tol,
        grid=f"m+n <= {degmax}, i,k <= {ptmax}",
        worst_case=worst_at,
    )


def verify_duality(params: EuclidParams2, degmax: int, tol: float = 1e-10) -> VerifyReport:
    """Check the degree/variable exchange against the inverse-motion family.

    The C-form compares C_{i,k}(m, n) with the rescaled inverse-motion value
    of C~_{m,n}(i, k); residuals are relative with an absolute floor of 1.
    The S-form (plain exchange of indices) is additionally checked whenever
    the rotated translations of both motions are non-degenerate.
    """
    dual = dual_params(params)  # raises DegenerateParameterError when degenerate
    a, b = params.alpha, params.beta
    at, bt = dual.alpha, dual.beta

    # one raising table per evaluation point covers all needed degrees
    tables_fwd = {
        (m, n): raising_all(params, degmax, (m, n)) for m, n in _degrees_upto(degmax)
    }
    tables_dual = {
        (m, n): raising_all(dual, degmax, (m, n)) for m, n in _degrees_upto(degmax)
    }

    worst_val = -1.0
    worst_at = ""
    for m, n in _degrees_upto(degmax):
        for i, k in _degrees_upto(degmax):
            lhs = tables_fwd[(m, n)][(i, k)]
            scale = math.sqrt(factorial(m) * factorial(n) / (factorial(i) * factorial(k)))
            rhs = scale * (at**i * bt**k) / (a**m * b**n) * tables_dual[(i, k)][(m, n)]
            rel = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
            if rel > worst_val:
                worst_val = rel
                worst_at = f"C-form at (m,n)=({m},{n}), (i,k)=({i},{k})"

    s_form_checked = False
    der = derive(params)
    der_dual = derive(dual)
    if None not in der.u_fields().values() and None not in der_dual.u_fields().values():
        s_form_checked = True
        for m, n in _degrees_upto(degmax):
            for i, k in _degrees_upto(degmax):
                sign_ik = -1.0 if (i + k) % 2 else 1.0
                sign_mn = -1.0 if (m + n) % 2 else 1.0
                s_fwd = (
                    tables_fwd[(m, n)][(i, k)]
                    * sign_ik
                    * math.sqrt(factorial(i) * factorial(k))
                    / (der.omega**i * der.zeta**k)
                )
                s_dual = (
                    tables_dual[(i, k)][(m, n)]
                    * sign_mn
                    * math.sqrt(factorial(m) * factorial(n))
                    / (der_dual.omega**m * der_dual.zeta**n)
                )
                rel = abs(s_fwd - s_dual) / max(1.0, abs(s_fwd), abs(s_dual))
                if rel > worst_val:
                    worst_val = rel
                    worst_at = f"S-form at (m,n)=({m},{n}), (i,k)=({i},{k})"

    return VerifyReport.build(
        identity="duality",
        max_residual=worst_val,
        tolerance=tol,
        grid=f"m+n, i+k <= {degmax}",
        worst_case=worst_at,
        extras={"s_form_checked": s_form_checked},
    )


def _envelope_values(nmax: int, x: np.ndarray) -> List[np.ndarray]:
    """Gaussian-stripped wavefunction values for all degrees <= nmax, vectorized."""
    out = [np.full_like(x, math.pi ** -0.25)]
    if nmax >= 1:
        out.append(x * math.sqrt(2.0) * out[0])
    for j in range(1, nmax):
        out.append(x * math.sqrt(2.0 / (j + 1)) * out[j] - math.sqrt(j / (j + 1)) * out[j - 1])
    return out


def integral_value(params: EuclidParams2, deg: Deg, pt: Pt, nodes: int) -> float:
    """C_{m,n}(i, k) from the double wavefunction overlap integral.

    The four Gaussian envelopes are regrouped: the motion acts on
    coordinates as an isometry plus shift, so the product of the plain and
    the shifted Gaussian recenters to exp(-|y|^2) after completing the
    square at the midpoint of the two centers.  Standard Gauss-Hermite
    nodes then integrate the remaining polynomial exactly.
    """
    m, n = _validate_index_pair("deg", deg)
    i, k = _validate_index_pair("pt", pt)
    if nodes < max(i, k, m, n) + 1:
        raise ValueError("need at least max(i,k,m,n)+1 quadrature nodes per axis")
    amp = weight_amp(params, i, k)
    if abs(amp) < WEIGHT_UNDERFLOW:
        raise DegenerateParameterError(
            f"weight amplitude {amp:.3e} below underflow threshold {WEIGHT_UNDERFLOW:.0e}"
        )
    mapping = affine_map(params)
    ct, st = math.cos(params.theta), math.sin(params.theta)
    t1, t2 = mapping.a_shift, mapping.b_shift
    # center of the shifted Gaussian in the unrotated frame
    c1 = ct * t1 + st * t2
    c2 = -st * t1 + ct * t2
    y, w = gauss_hermite_rule(nodes)
    y1 = y[:, None]
    y2 = y[None, :]
    x1 = y1 - c1 / 2.0
    x2 = y2 - c2 / 2.0
    xt1 = ct * y1 - st * y2 + t1 / 2.0
    xt2 = st * y1 + ct * y2 + t2 / 2.0
    integrand = (
        _envelope_values(i, x1 * np.ones_like(y2))[i]
        * _envelope_values(k, x2 * np.ones_like(y1))[k]
        * _envelope_values(m, xt1)[m]
        * _envelope_values(n, xt2)[n]
    )
    total = float(w @ integrand @ w)
    prefactor = math.exp(-(c1 * c1 + c2 * c2) / 4.0)
    return prefactor * total / amp


def verify_integral(
    params: EuclidParams2, deg: Deg, pt: Pt, nodes: int = 40, tol: float = 1e-8
) -> VerifyReport:
    """Compare the quadrature of the overlap integral with the raising reference."""
    value = integral_value(params, deg, pt, nodes)
    reference = eval_raising(params, deg, pt)
    residual = abs(value - reference)
    return VerifyReport.build(
        identity="integral representation",
        max_residual=residual,
        tolerance=tol,
        grid=f"deg={tuple(deg)}, pt={tuple(pt)}, nodes={nodes}",
        worst_case=f"quadrature={value!r}, reference={reference!r}",
        extras={"quadrature": value, "reference": reference},
    )
