"""Bivariate Krawtchouk polynomials and their contraction to bivariate Charlier.

The family P_{m,n}(i, k; N) is parametrized by a 3x3 rotation matrix R and a
lattice size N through the generating function

    (1 + (R11/R13) u + (R12/R13) v)^i
    (1 + (R21/R23) u + (R22/R23) v)^k
    (1 + (R31/R33) u + (R32/R33) v)^(N-i-k)
        = sum_{m+n <= N} trinomial(N; m, n)^(1/2) P_{m,n}(i, k; N) u^m v^n,

and is orthonormal on the simplex i + k <= N against

    w_{i,k;N} = trinomial(N; i, k) R13^(2i) R23^(2k) R33^(2(N-i-k)).

Sending N to infinity along rotations whose out-of-plane angles shrink like
alpha/sqrt(N) and beta/sqrt(N) contracts the family to the bivariate
Charlier polynomials of the motion (theta, alpha, beta); ``limit_study``
measures this pointwise and also decides empirically which of the two
candidate sign conventions of the limiting generating function the
contraction actually selects (they differ in the sign of the beta cos(t)
part of the y-exponential; only one converges).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .bivariate import genfun_all, raising_all
from .combinat import multinomial
from .euclid import EuclidParams2
from .reports import VerifyReport
from .series import TruncatedSeries

Deg = Tuple[int, int]

#: Acceptance surrogate for the terminal contraction error: 5 percent,
#: relative with an absolute floor of 1 (matching the cross-algorithm
#: convention for values of magnitude below 1).
TERMINAL_RELATIVE_BOUND = 0.05

ROTATION_TOL = 1e-12


def rotation_zxz(delta: float, gamma: float, theta: float) -> np.ndarray:
    """Rotation product r_x2(delta) r_x1(gamma) r_x3(theta)."""
    return np.asarray(_rotation_zxz_generic(delta, gamma, theta, math.cos, math.sin), dtype=float)


def _rotation_zxz_generic(delta, gamma, theta, cos, sin):
    cd, sd = cos(delta), sin(delta)
    cg, sg = cos(gamma), sin(gamma)
    ct, st = cos(theta), sin(theta)
    r_x2 = [[cd, 0, sd], [0, 1, 0], [-sd, 0, cd]]
    r_x1 = [[1, 0, 0], [0, cg, sg], [0, -sg, cg]]
    r_x3 = [[ct, st, 0], [-st, ct, 0], [0, 0, 1]]

    def matmul(a, b):
        return [
            [sum(a[i][j] * b[j][k] for j in range(3)) for k in range(3)]
            for i in range(3)
        ]

    return matmul(matmul(r_x2, r_x1), r_x3)


def validate_rotation(rotation: np.ndarray) -> np.ndarray:
    rot = np.asarray(rotation, dtype=float)
    if rot.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {rot.shape}")
    err = np.abs(rot @ rot.T - np.eye(3)).max()
    if err >= ROTATION_TOL:
        raise ValueError(f"matrix is not orthogonal: max |R R^T - I| = {err:.3e}")
    det = float(np.linalg.det(rot))
    if abs(det - 1.0) >= 1e-12:
        raise ValueError(f"matrix is not a rotation: det = {det!r}")
    return rot


@dataclass(frozen=True)
class KrawtchoukParams2:
    """Rotation matrix plus lattice size; third-column entries must be nonzero."""

    rotation: np.ndarray
    n_lattice: int

    def __post_init__(self) -> None:
        rot = validate_rotation(self.rotation).copy()
        if self.n_lattice < 1:
            raise ValueError(f"lattice size must be positive, got {self.n_lattice}")
        if np.any(rot[:, 2] == 0):
            raise ValueError("R13, R23, R33 must all be nonzero (they appear as divisors)")
        rot.setflags(write=False)
        object.__setattr__(self, "rotation", rot)


def _krawtchouk2_series(rotation, n_lattice: int, pt: Deg, degmax: int) -> TruncatedSeries:
    i, k = pt
    r = rotation
    f1 = TruncatedSeries.binomial_power((r[0][0] / r[0][2], r[0][1] / r[0][2]), i, degmax)
    f2 = TruncatedSeries.binomial_power((r[1][0] / r[1][2], r[1][1] / r[1][2]), k, degmax)
    f3 = TruncatedSeries.binomial_power(
        (r[2][0] / r[2][2], r[2][1] / r[2][2]), n_lattice - i - k, degmax
    )
    return f1 * f2 * f3


def krawtchouk2_all(params: KrawtchoukParams2, degmax: int, pt: Deg) -> Dict[Deg, float]:
    """All P_{m,n}(pt; N) with m + n <= min(degmax, N) via series extraction."""
    i, k = pt
    n_lat = params.n_lattice
    if i < 0 or k < 0 or i + k > n_lat:
        raise ValueError(f"point {pt} lies outside the simplex i + k <= {n_lat}")
    degmax = min(degmax, n_lat)
    series = _krawtchouk2_series(params.rotation.tolist(), n_lat, (i, k), degmax)
    out = {}
    for m in range(degmax + 1):
        for n in range(degmax + 1 - m):
            out[(m, n)] = series.coefficient((m, n)) / math.sqrt(multinomial(n_lat, m, n))
    return out


def krawtchouk2(params: KrawtchoukParams2, deg: Deg, pt: Deg) -> float:
    """P_{m,n}(i, k; N) normalized by the square-rooted trinomial coefficient."""
    m, n = deg
    if m < 0 or n < 0 or m + n > params.n_lattice:
        raise ValueError(f"degree {deg} lies outside the simplex m + n <= {params.n_lattice}")
    return krawtchouk2_all(params, m + n, pt)[(m, n)]


def krawtchouk2_weight(params: KrawtchoukParams2, i: int, k: int) -> float:
    """Simplex weight trinomial(N; i, k) R13^2i R23^2k R33^2(N-i-k)."""
    n_lat = params.n_lattice
    if i < 0 or k < 0 or i + k > n_lat:
        raise ValueError(f"point ({i},{k}) lies outside the simplex i + k <= {n_lat}")
    r = params.rotation
    return (
        multinomial(n_lat, i, k)
        * r[0, 2] ** (2 * i)
        * r[1, 2] ** (2 * k)
        * r[2, 2] ** (2 * (n_lat - i - k))
    )


def verify_orthogonality_krawtchouk(params: KrawtchoukParams2, tol: float = 1e-10) -> VerifyReport:
    """Full-simplex Gram check of the P family against its weight."""
    n_lat = params.n_lattice
    degs = [(m, n) for m in range(n_lat + 1) for n in range(n_lat + 1 - m)]
    pts = [(i, k) for i in range(n_lat + 1) for k in range(n_lat + 1 - i)]
    values = np.empty((len(pts), len(degs)))
    weights = np.empty(len(pts))
    for row, (i, k) in enumerate(pts):
        table = krawtchouk2_all(params, n_lat, (i, k))
        values[row] = [table[d] for d in degs]
        weights[row] = krawtchouk2_weight(params, i, k)
    gram = values.T @ (weights[:, None] * values)
    residual = np.abs(gram - np.eye(len(degs)))
    worst = np.unravel_index(int(np.argmax(residual)), residual.shape)
    return VerifyReport.build(
        identity="bivariate Krawtchouk orthogonality",
        max_residual=float(residual.max()),
        tolerance=tol,
        grid=f"full simplex, N={n_lat}",
        worst_case=f"degree pair ({degs[worst[0]]}, {degs[worst[1]]})",
        extras={"weight_mass_defect": float(abs(weights.sum() - 1.0))},
    )


def limit_study(
    params2: EuclidParams2,
    deg: Deg,
    pt: Deg,
    n_values: Sequence[int],
    tol_terminal: float = TERMINAL_RELATIVE_BOUND,
    dps: Optional[int] = None,
) -> VerifyReport:
    """Contraction errors |P_{m,n}(i,k;N) - C_{m,n}(i,k)| along increasing N.

    For each N the rotation is built with out-of-plane angles alpha/sqrt(N)
    and beta/sqrt(N) and in-plane angle theta.  The report records the error
    sequence, whether it decreases strictly, the terminal relative error
    (absolute floor 1), and which y-exponential sign convention of the
    limiting generating function the sequence actually converged to.

    ``dps`` switches the whole computation to mpmath arithmetic with that
    many decimal digits (the evaluation kernels are precision-generic).
    """
    m, n = deg
    if not n_values:
        raise ValueError("need at least one lattice size")
    n_values = list(n_values)
    if any(nv < m + n or nv < pt[0] + pt[1] for nv in n_values):
        raise ValueError("every N must admit both deg and pt inside its simplex")

    if dps is None:
        target = raising_all(params2, m + n, pt)[(m, n)]
        target_alt = genfun_all(params2, m + n, pt, _alt_y_sign=True)[(m, n)]
        p_values = []
        for n_lat in n_values:
            rot = rotation_zxz(
                params2.alpha / math.sqrt(n_lat), params2.beta / math.sqrt(n_lat), params2.theta
            )
            p_values.append(krawtchouk2(KrawtchoukParams2(rot, n_lat), deg, pt))
    else:
        target, target_alt, p_values = _limit_values_mp(params2, deg, pt, n_values, dps)

    errors = [abs(p - target) for p in p_values]
    errors_alt = [abs(p - target_alt) for p in p_values]
    decreasing = all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
    decreasing_alt = all(e2 < e1 for e1, e2 in zip(errors_alt, errors_alt[1:]))
    scale = max(1.0, abs(target))
    terminal_rel = float(errors[-1] / scale)
    if decreasing and terminal_rel <= tol_terminal:
        converged = "plus"  # the + beta cos(theta) convention of the family itself
    elif decreasing_alt and float(errors_alt[-1] / max(1.0, abs(target_alt))) <= tol_terminal:
        converged = "minus"
    else:
        converged = "none"
    passed_value = terminal_rel if (decreasing and converged == "plus") else float("inf")

    return VerifyReport.build(
        identity="Krawtchouk-to-Charlier contraction",
        max_residual=passed_value,
        tolerance=tol_terminal,
        grid=f"deg={tuple(deg)}, pt={tuple(pt)}, N in {list(n_values)}",
        worst_case="" if decreasing else "error sequence not strictly decreasing",
        extras={
            "n_values": [int(v) for v in n_values],
            "errors": [float(e) for e in errors],
            "errors_alternate_sign": [float(e) for e in errors_alt],
            "target": float(target),
            "strictly_decreasing": decreasing,
            "terminal_relative_error": terminal_rel,
            "converged_convention": converged,
        },
    )


def _limit_values_mp(params2, deg, pt, n_values, dps):
    """mpmath-backed evaluation of the contraction data (extended precision)."""
    import mpmath

    m, n = deg
    with mpmath.workdps(dps):
        theta = mpmath.mpf(params2.theta)
        alpha = mpmath.mpf(params2.alpha)
        beta = mpmath.mpf(params2.beta)
        ct, st = mpmath.cos(theta), mpmath.sin(theta)
        target = raising_all(
            params2, m + n, pt, _trig=(ct, st), _sqrt=mpmath.sqrt, _ab=(alpha, beta)
        )[(m, n)]
        omega = alpha * ct - beta * st
        alt_y = -(alpha * st - beta * ct)
        exp_part = TruncatedSeries.exp_linear((-omega, alt_y), m + n)
        f_i = TruncatedSeries.binomial_power((ct / alpha, st / alpha), pt[0], m + n)
        f_k = TruncatedSeries.binomial_power((-st / beta, ct / beta), pt[1], m + n)
        series = exp_part * f_i * f_k
        target_alt = series.coefficient((m, n)) * mpmath.sqrt(
            math.factorial(m) * math.factorial(n)
        )
        p_values = []
        for n_lat in n_values:
            rot = _rotation_zxz_generic(
                alpha / mpmath.sqrt(n_lat),
                beta / mpmath.sqrt(n_lat),
                theta,
                mpmath.cos,
                mpmath.sin,
            )
            series = _krawtchouk2_series(rot, n_lat, pt, m + n)
            p_values.append(
                series.coefficient((m, n)) / mpmath.sqrt(multinomial(n_lat, m, n))
            )
        return target, target_alt, p_values
