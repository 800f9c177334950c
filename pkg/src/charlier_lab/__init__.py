"""Bivariate and d-variate Charlier polynomials for Euclidean motions.

The package evaluates the polynomial families attached to planar and
d-dimensional Euclidean motions through four independent closed-form
algorithms and verifies every structural identity they satisfy:
orthogonality, recurrence relations, difference equations, raising and
lowering ladders, duality under motion inversion, an oscillator-wavefunction
integral representation, and the contraction from bivariate Krawtchouk
polynomials.
"""

from .bivariate import (
    ALGORITHM_NAMES,
    eval_decomposition,
    eval_genfun,
    eval_hypergeometric,
    eval_raising,
    evaluate,
    genfun_all,
    integral_value,
    raising_all,
    raising_grid,
    s_polynomial,
    verify_difference,
    verify_duality,
    verify_integral,
    verify_lowering,
    verify_orthogonality,
    verify_recurrence,
)
from .combinat import binomial, compensated_sum, factorial, multinomial, pochhammer
from .euclid import (
    AffineMap2,
    DegenerateParameterError,
    DerivedParams2,
    EuclidParams2,
    EuclidParamsD,
    affine_map,
    derive,
    dual_params,
    group_matrix,
    tilde_weight_amp,
    weight,
    weight_amp,
)
from .krawtchouk2d import (
    KrawtchoukParams2,
    krawtchouk2,
    krawtchouk2_all,
    krawtchouk2_weight,
    limit_study,
    rotation_zxz,
    verify_orthogonality_krawtchouk,
)
from .multivariate import (
    charlier_d_all,
    eval_charlier_d,
    eval_charlier_d_raising,
    random_orthogonal,
    verify_orthogonality_d,
    weight_amp_d,
)
from .reports import EvalReport, VerifyReport
from .series import TruncatedSeries
from .univariate import (
    charlier,
    charlier_orthocheck,
    gauss_hermite_rule,
    hermite_wavefunction,
    krawtchouk,
    poisson_weights,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "AffineMap2",
    "DegenerateParameterError",
    "DerivedParams2",
    "EuclidParams2",
    "EuclidParamsD",
    "EvalReport",
    "KrawtchoukParams2",
    "TruncatedSeries",
    "VerifyReport",
    "affine_map",
    "binomial",
    "charlier",
    "charlier_d_all",
    "charlier_orthocheck",
    "compensated_sum",
    "derive",
    "dual_params",
    "eval_charlier_d",
    "eval_charlier_d_raising",
    "eval_decomposition",
    "eval_genfun",
    "eval_hypergeometric",
    "eval_raising",
    "evaluate",
    "factorial",
    "gauss_hermite_rule",
    "genfun_all",
    "group_matrix",
    "hermite_wavefunction",
    "integral_value",
    "krawtchouk",
    "krawtchouk2",
    "krawtchouk2_all",
    "krawtchouk2_weight",
    "limit_study",
    "multinomial",
    "pochhammer",
    "poisson_weights",
    "raising_all",
    "raising_grid",
    "random_orthogonal",
    "rotation_zxz",
    "s_polynomial",
    "tilde_weight_amp",
    "verify_difference",
    "verify_duality",
    "verify_integral",
    "verify_lowering",
    "verify_orthogonality",
    "verify_orthogonality_d",
    "verify_orthogonality_krawtchouk",
    "verify_recurrence",
    "weight",
    "weight_amp",
    "weight_amp_d",
]
