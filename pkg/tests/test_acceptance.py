"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them on
passing runs).  Tolerances are pinned here and nowhere else; relative
comparisons use an absolute floor of 1 for values of magnitude below 1.
"""

import math
import time
from math import factorial

import numpy as np

import charlier_lab as cl
from conftest import PARAM_SETS

SET_IDS = ["(pi/6, 1, 1)", "(pi/4, 0.7, 1.3)", "(1.1, 0.8, 1.7)"]


def _report(num: int, name: str, passed: bool, detail: str) -> None:
    verdict = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {num:02d} {verdict} {name}: {detail}")
    assert passed, f"criterion {num} ({name}) failed: {detail}"


def test_c01_cross_algorithm_equivalence():
    # tolerance: 1e-10 relative with a 1e-12 absolute floor for values of
    # magnitude below 1 (the continuous reading; a hard 1e-12 cliff at
    # magnitude 1 would demand 100x more accuracy at 0.99 than at 1.01)
    start = time.perf_counter()
    worst = 0.0
    for params in PARAM_SETS:
        for i in range(11):
            for k in range(11):
                ref = cl.raising_all(params, 6, (i, k))
                gen = cl.genfun_all(params, 6, (i, k))
                for (m, n), r in ref.items():
                    values = (
                        gen[(m, n)],
                        cl.eval_hypergeometric(params, (m, n), (i, k)),
                        cl.eval_decomposition(params, (m, n), (i, k)),
                    )
                    for v in values:
                        tol = max(1e-10 * max(abs(v), abs(r)), 1e-12)
                        worst = max(worst, abs(v - r) / tol)
    elapsed = time.perf_counter() - start
    _report(
        1,
        "cross-algorithm equivalence",
        worst <= 1.0 and elapsed < 30.0,
        f"worst error at {worst:.3f} of tolerance over m+n<=6, i,k<=10, "
        f"3 parameter sets; {elapsed:.1f}s (< 30s)",
    )


def test_c02_orthogonality():
    start = time.perf_counter()
    worst = 0.0
    for params in PARAM_SETS:
        report = cl.verify_orthogonality(params, 4, 60, tol=1e-8)
        worst = max(worst, report.max_residual)
    elapsed = time.perf_counter() - start
    _report(
        2,
        "bivariate orthogonality",
        worst < 1e-8 and elapsed < 60.0,
        f"max residual {worst:.3e} (< 1e-8) at degmax=4, cutoff=60; {elapsed:.1f}s (< 60s)",
    )


def test_c03_recurrence_difference_lowering():
    worst = 0.0
    worst_id = ""
    for params in PARAM_SETS:
        for report in (
            cl.verify_recurrence(params, 5, 12, tol=1e-9),
            cl.verify_difference(params, 5, 12, tol=1e-9),
            cl.verify_lowering(params, 5, 12, tol=1e-9),
        ):
            if report.max_residual > worst:
                worst = report.max_residual
                worst_id = report.identity
    _report(
        3,
        "recurrence, difference, lowering",
        worst < 1e-9,
        f"max residual {worst:.3e} (< 1e-9) over m+n<=5, i,k<=12; worst suite: {worst_id}",
    )


def test_c04_duality():
    worst = 0.0
    for params in PARAM_SETS:
        report = cl.verify_duality(params, 4, tol=1e-10)
        assert report.extras["s_form_checked"]
        worst = max(worst, report.max_residual)
    _report(
        4,
        "duality (value form and exchanged form)",
        worst < 1e-10,
        f"max relative residual {worst:.3e} (< 1e-10) over m+n, i+k <= 4",
    )


def test_c05_axis_aligned_factorization():
    worst = 0.0
    for params in PARAM_SETS:
        al, be = params.alpha, params.beta
        axis = cl.EuclidParams2(0.0, al, be)
        for pt in [(0, 0), (1, 3), (4, 2), (6, 6), (5, 1), (3, 5)]:
            table = cl.raising_all(axis, 12, pt)
            for m in range(7):
                for n in range(7):
                    want = (
                        (-al) ** m
                        * (-be) ** n
                        / math.sqrt(factorial(m) * factorial(n))
                        * cl.charlier(m, pt[0], al * al)
                        * cl.charlier(n, pt[1], be * be)
                    )
                    worst = max(worst, abs(table[(m, n)] - want))
    _report(
        5,
        "axis-aligned factorization into univariate Charlier",
        worst < 1e-11,
        f"max |difference| {worst:.3e} (< 1e-11) for m,n <= 6",
    )


def test_c06_integral_representation():
    worst = 0.0
    for params in PARAM_SETS:
        for m in range(4):
            for n in range(4):
                for i in range(4):
                    for k in range(4):
                        report = cl.verify_integral(params, (m, n), (i, k), nodes=40, tol=1e-8)
                        worst = max(worst, report.max_residual)
    ground = cl.integral_value(PARAM_SETS[0], (0, 0), (0, 0), 40)
    ground_ok = abs(ground - 1.0) < 1e-10
    _report(
        6,
        "integral representation",
        worst < 1e-8 and ground_ok,
        f"max |quadrature - reference| {worst:.3e} (< 1e-8) for m,n,i,k <= 3, 40 nodes; "
        f"ground state {ground!r} (within 1e-10 of 1)",
    )


def test_c07_krawtchouk_contraction():
    params = cl.EuclidParams2(math.pi / 6, 1.0, 1.0)
    report = cl.limit_study(params, (1, 1), (2, 1), [16, 64, 256, 1024])
    errors = report.extras["errors"]
    decreasing = report.extras["strictly_decreasing"]
    terminal = report.extras["terminal_relative_error"]
    convention = report.extras["converged_convention"]
    _report(
        7,
        "Krawtchouk-to-Charlier contraction",
        decreasing and terminal < 0.05 and convention == "plus",
        f"errors {['%.3e' % e for e in errors]} strictly decreasing={decreasing}, "
        f"terminal {terminal:.3%} (< 5%, absolute floor 1 since the target value is 0); "
        f"converged under the '+beta cos(theta)' y-exponential convention "
        f"(the alternate sign does not converge)",
    )


def test_c08_three_variable_suite():
    alphas = np.array([1.0, 0.8, 1.3])
    params = cl.EuclidParamsD(rotation=cl.random_orthogonal(3, seed=7), alphas=alphas)
    ortho = cl.verify_orthogonality_d(params, 2, 40, tol=1e-7)

    ident = cl.EuclidParamsD(rotation=np.eye(3), alphas=alphas)
    worst_fact = 0.0
    for pt in [(0, 0, 0), (2, 1, 3), (4, 4, 4)]:
        table = cl.charlier_d_all(ident, 4, pt)
        for key, got in table.items():
            want = 1.0
            for ax in range(3):
                want *= (
                    (-alphas[ax]) ** key[ax]
                    / math.sqrt(factorial(key[ax]))
                    * cl.charlier(key[ax], pt[ax], alphas[ax] ** 2)
                )
            worst_fact = max(worst_fact, abs(got - want))

    theta, al, be = 0.6, 1.0, 1.1
    ct, st = math.cos(theta), math.sin(theta)
    planar = cl.EuclidParamsD(
        rotation=np.array([[ct, st], [-st, ct]]), alphas=np.array([al, be])
    )
    p2 = cl.EuclidParams2(theta, al, be)
    worst_red = 0.0
    for pt in [(0, 0), (3, 2), (6, 5)]:
        table_d = cl.charlier_d_all(planar, 4, pt)
        table_b = cl.genfun_all(p2, 4, pt)
        for key, v in table_d.items():
            worst_red = max(worst_red, abs(v - table_b[key]))

    _report(
        8,
        "three-variable suite",
        ortho.max_residual < 1e-7 and worst_fact < 1e-10 and worst_red < 1e-12,
        f"d=3 orthogonality residual {ortho.max_residual:.3e} (< 1e-7, random rotation, "
        f"degmax 2, cutoff 40/axis); identity-rotation factorization {worst_fact:.3e} "
        f"(< 1e-10); planar reduction vs bivariate {worst_red:.3e} (< 1e-12)",
    )


def test_c09_univariate_baselines():
    worst_charlier = 0.0
    for a, cutoff in ((1.0, 80), (4.0, 120)):
        report = cl.charlier_orthocheck(3, a, cutoff, tol=1e-10)
        worst_charlier = max(worst_charlier, report.max_residual)

    nmax = 10
    nodes, weights = cl.gauss_hermite_rule(2 * nmax + 1)
    from charlier_lab.univariate import hermite_wave_envelope_free

    table = np.array([hermite_wave_envelope_free(nmax, x) for x in nodes])
    gram = table.T * weights @ table
    worst_hermite = float(np.abs(gram - np.eye(nmax + 1)).max())

    _report(
        9,
        "univariate baselines",
        worst_charlier < 1e-10 and worst_hermite < 1e-10,
        f"Charlier orthogonality residual {worst_charlier:.3e} (< 1e-10, n <= 3, a in {{1, 4}}); "
        f"wavefunction orthonormality residual {worst_hermite:.3e} (< 1e-10, n <= 10)",
    )


def test_c10_degeneracy_handling():
    params = cl.EuclidParams2(math.pi / 4, 1.0, 1.0)
    refused_hyper = refused_decomp = False
    try:
        cl.eval_hypergeometric(params, (1, 1), (2, 2))
    except cl.DegenerateParameterError:
        refused_hyper = True
    try:
        cl.eval_decomposition(params, (1, 1), (2, 2))
    except cl.DegenerateParameterError:
        refused_decomp = True

    worst = 0.0
    for i in range(7):
        for k in range(7):
            ref = cl.raising_all(params, 4, (i, k))
            gen = cl.genfun_all(params, 4, (i, k))
            for key, r in ref.items():
                worst = max(worst, abs(gen[key] - r) / max(1.0, abs(r)))

    _report(
        10,
        "degeneracy handling",
        refused_hyper and refused_decomp and worst < 1e-11,
        f"hypergeometric refused: {refused_hyper}; decomposition refused: {refused_decomp}; "
        f"raising/generating-function agreement {worst:.3e} (< 1e-11) at (pi/4, 1, 1)",
    )
