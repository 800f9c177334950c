"""Parameter objects for planar and d-dimensional Euclidean motions.

A planar motion is the triple (theta, alpha, beta): rotation by theta
followed by the translation (alpha, beta)/sqrt(2), represented by the 3x3
affine matrix

    [ cos t   sin t   alpha/sqrt(2) ]
    [-sin t   cos t   beta /sqrt(2) ]
    [   0       0          1        ]

Both translation parameters must be nonzero: the raising recurrences and the
generating function divide by them.

Derived quantities:

* omega = alpha cos t - beta sin t  and  zeta = alpha sin t + beta cos t,
  the rotated translation vector (norm preserved);
* the inverse-motion parameters (theta~, alpha~, beta~) = (-theta,
  beta sin t - alpha cos t, -(alpha sin t + beta cos t));
* the four coefficients u_ij = -trig / (quadratic in alpha, beta) that drive
  the hypergeometric form.  Each u_ij is present only while its denominator
  stays above a degeneracy threshold (default 1e-10 * (alpha^2 + beta^2));
  below that the hypergeometric route is numerically meaningless and the
  raising recursion is the designated fallback.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

#: Relative scale for deciding that a u-coefficient denominator has vanished.
DEGENERACY_SCALE = 1e-10

#: Relative scale for deciding that a dual translation parameter has vanished.
DUAL_DEGENERACY_SCALE = 1e-12


class DegenerateParameterError(ValueError):
    """A parameter combination puts a required denominator at (numerical) zero."""


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class EuclidParams2:
    """Planar Euclidean motion parameters (theta, alpha, beta)."""

    theta: float
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("theta", "alpha", "beta"):
            _require_finite(name, getattr(self, name))
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be nonzero (they appear as divisors)")

    def to_json_dict(self) -> dict:
        return {"theta": self.theta, "alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_json_dict(cls, data: dict) -> "EuclidParams2":
        return cls(theta=float(data["theta"]), alpha=float(data["alpha"]), beta=float(data["beta"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EuclidParams2":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class DerivedParams2:
    """Quantities derived from a planar motion; u-fields are None when degenerate."""

    omega: float
    zeta: float
    theta_t: float
    alpha_t: float
    beta_t: float
    u11: Optional[float]
    u12: Optional[float]
    u21: Optional[float]
    u22: Optional[float]

    def u_fields(self) -> dict:
        return {"u11": self.u11, "u12": self.u12, "u21": self.u21, "u22": self.u22}


@dataclass(frozen=True)
class AffineMap2:
    """The coordinate-space action x -> rotation(theta) @ x + (a_shift, b_shift)."""

    theta: float
    a_shift: float
    b_shift: float

    def apply(self, x1: float, x2: float):
        ct, st = math.cos(self.theta), math.sin(self.theta)
        return (ct * x1 - st * x2 + self.a_shift, st * x1 + ct * x2 + self.b_shift)


# Denominators of the four u-coefficients, keyed by field name.  Each is a
# product of one translation parameter with omega or zeta.
_U_DENOMINATORS = {
    "u11": lambda ct, st, a, b: a * a * ct - a * b * st,
    "u12": lambda ct, st, a, b: a * a * st + a * b * ct,
    "u21": lambda ct, st, a, b: b * b * st - a * b * ct,
    "u22": lambda ct, st, a, b: b * b * ct + a * b * st,
}
_U_NUMERATORS = {
    "u11": lambda ct, st: -ct,
    "u12": lambda ct, st: -st,
    "u21": lambda ct, st: -st,
    "u22": lambda ct, st: -ct,
}


def derive(params: EuclidParams2, threshold: Optional[float] = None) -> DerivedParams2:
    """Compute rotated translations, inverse parameters, and u-coefficients."""
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, b = params.alpha, params.beta
    omega = a * ct - b * st
    zeta = a * st + b * ct
    if threshold is None:
        threshold = DEGENERACY_SCALE * (a * a + b * b)
    u: dict = {}
    for name in _U_DENOMINATORS:
        den = _U_DENOMINATORS[name](ct, st, a, b)
        u[name] = _U_NUMERATORS[name](ct, st) / den if abs(den) > threshold else None
    return DerivedParams2(
        omega=omega,
        zeta=zeta,
        theta_t=-params.theta,
        alpha_t=b * st - a * ct,
        beta_t=-(a * st + b * ct),
        **u,
    )


def u_denominator_description(name: str) -> str:
    return {
        "u11": "alpha^2 cos(theta) - alpha beta sin(theta)",
        "u12": "alpha^2 sin(theta) + alpha beta cos(theta)",
        "u21": "beta^2 sin(theta) - alpha beta cos(theta)",
        "u22": "beta^2 cos(theta) + alpha beta sin(theta)",
    }[name]


def dual_params(params: EuclidParams2) -> EuclidParams2:
    """Parameters of the inverse motion; errors out when a dual translation vanishes."""
    der = derive(params)
    scale = math.hypot(params.alpha, params.beta)
    tol = DUAL_DEGENERACY_SCALE * scale
    if abs(der.alpha_t) <= tol or abs(der.beta_t) <= tol:
        raise DegenerateParameterError(
            "dual parameters are degenerate: "
            f"alpha~={der.alpha_t:.3e}, beta~={der.beta_t:.3e} "
            "(tan(theta) = alpha/beta or cot(theta) = -alpha/beta)"
        )
    return EuclidParams2(theta=der.theta_t, alpha=der.alpha_t, beta=der.beta_t)


def weight_amp(params: EuclidParams2, i: int, k: int) -> float:
    """Ground-state amplitude exp(-(a^2+b^2)/2) a^i b^k / sqrt(i! k!)."""
    if i < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    w = math.exp(-(params.alpha**2 + params.beta**2) / 2.0)
    for j in range(i):
        w *= params.alpha / math.sqrt(j + 1)
    for j in range(k):
        w *= params.beta / math.sqrt(j + 1)
    return w


def weight(params: EuclidParams2, i: int, k: int) -> float:
    """Product-Poisson weight w_{i,k} = weight_amp**2, built without squaring."""
    if i < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    w = math.exp(-(params.alpha**2 + params.beta**2))
    a2, b2 = params.alpha**2, params.beta**2
    for j in range(i):
        w *= a2 / (j + 1)
    for j in range(k):
        w *= b2 / (j + 1)
    return w


def tilde_weight_amp(params: EuclidParams2, i: int, k: int) -> float:
    """Inverse-motion amplitude; equals weight_amp(dual_params(params), i, k)."""
    if i < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    ct, st = math.cos(params.theta), math.sin(params.theta)
    at = params.beta * st - params.alpha * ct
    bt = -(params.alpha * st + params.beta * ct)
    w = math.exp(-(params.alpha**2 + params.beta**2) / 2.0)
    for j in range(i):
        w *= at / math.sqrt(j + 1)
    for j in range(k):
        w *= bt / math.sqrt(j + 1)
    return w


def group_matrix(params: EuclidParams2) -> np.ndarray:
    """3x3 affine matrix of the motion (matrix product = group law)."""
    ct, st = math.cos(params.theta), math.sin(params.theta)
    s = 1.0 / math.sqrt(2.0)
    return np.array(
        [[ct, st, params.alpha * s], [-st, ct, params.beta * s], [0.0, 0.0, 1.0]]
    )


def affine_map(params: EuclidParams2) -> AffineMap2:
    """Coordinate-space action of the motion on wavefunction arguments."""
    ct, st = math.cos(params.theta), math.sin(params.theta)
    root2 = math.sqrt(2.0)
    return AffineMap2(
        theta=params.theta,
        a_shift=-root2 * (params.alpha * ct - params.beta * st),
        b_shift=-root2 * (params.alpha * st + params.beta * ct),
    )


#: Tolerance for accepting a matrix as orthogonal.
ORTHOGONALITY_TOL = 1e-12


@dataclass(frozen=True)
class EuclidParamsD:
    """d-dimensional Euclidean motion: orthogonal matrix R plus translations."""

    rotation: np.ndarray
    alphas: np.ndarray

    def __post_init__(self) -> None:
        rot = np.array(self.rotation, dtype=float, copy=True)
        al = np.array(self.alphas, dtype=float, copy=True)
        if rot.ndim != 2 or rot.shape[0] != rot.shape[1]:
            raise ValueError(f"rotation must be square, got shape {rot.shape}")
        d = rot.shape[0]
        if al.shape != (d,):
            raise ValueError(f"alphas must have length {d}, got shape {al.shape}")
        err = np.abs(rot @ rot.T - np.eye(d)).max()
        if err >= ORTHOGONALITY_TOL:
            raise ValueError(f"rotation is not orthogonal: max |R R^T - I| = {err:.3e}")
        if np.any(al == 0) or not np.all(np.isfinite(al)):
            raise ValueError("all translation parameters must be nonzero and finite")
        rot.setflags(write=False)
        al.setflags(write=False)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "alphas", al)

    @property
    def dim(self) -> int:
        return self.rotation.shape[0]

    def to_json_dict(self) -> dict:
        return {"R": self.rotation.tolist(), "alphas": self.alphas.tolist()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "EuclidParamsD":
        return cls(rotation=np.array(data["R"], dtype=float), alphas=np.array(data["alphas"], dtype=float))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EuclidParamsD":
        return cls.from_json_dict(json.loads(text))
