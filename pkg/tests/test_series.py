import math

import pytest

from charlier_lab.series import TruncatedSeries


def test_one():
    s = TruncatedSeries.one(2, 4)
    assert s.coefficient((0, 0)) == 1.0
    assert s.coefficient((1, 0)) == 0.0


def test_invariant_rejects_overdegree_keys():
    with pytest.raises(ValueError):
        TruncatedSeries(2, 2, {(2, 1): 1.0})
    with pytest.raises(ValueError):
        TruncatedSeries(2, 2, {(1,): 1.0})


def test_coefficient_beyond_truncation_rejected():
    s = TruncatedSeries.one(2, 2)
    with pytest.raises(ValueError):
        s.coefficient((2, 1))


def test_multiplication_truncates():
    x = TruncatedSeries(1, 3, {(1,): 1.0})
    prod = x * x * x * x  # degree 4 monomial vanishes under truncation at 3
    assert prod.coeffs == {} or all(sum(k) <= 3 for k in prod.coeffs)
    assert prod.coefficient((3,)) == 0.0


def test_exp_linear_matches_scalar_exponential():
    s = TruncatedSeries.exp_linear((0.7, -1.2), 14)
    for point in [(0.05, 0.1), (-0.08, 0.02)]:
        exact = math.exp(0.7 * point[0] - 1.2 * point[1])
        assert s.evaluate(point) == pytest.approx(exact, rel=1e-12)


def test_binomial_power_integer_exponent_matches_pow():
    s = TruncatedSeries.binomial_power((0.3, -0.4), 7, 7)
    for point in [(0.1, 0.05), (-0.07, 0.11)]:
        exact = (1 + 0.3 * point[0] - 0.4 * point[1]) ** 7
        assert s.evaluate(point) == pytest.approx(exact, rel=1e-12)


def test_binomial_power_terminates_for_small_integer_exponent():
    # (1 + x + y)^2 truncated at degree 5 has no coefficients beyond degree 2
    s = TruncatedSeries.binomial_power((1.0, 1.0), 2, 5)
    assert all(sum(k) <= 2 for k, v in s.coeffs.items() if v != 0)
    assert s.coefficient((1, 1)) == pytest.approx(2.0)


def test_binomial_power_huge_exponent_approaches_exponential():
    # (1 + z/M)^M -> exp(z); with M = 1e6 the degree-3 coefficients agree to ~1e-6
    m_exp = 10**6
    s = TruncatedSeries.binomial_power((1.0 / m_exp,), m_exp, 3)
    for j in range(4):
        assert s.coefficient((j,)) == pytest.approx(1.0 / math.factorial(j), rel=1e-5)


def test_add_and_scale():
    a = TruncatedSeries(2, 2, {(0, 0): 1.0, (1, 0): 2.0})
    b = TruncatedSeries(2, 2, {(1, 0): -2.0, (0, 1): 5.0})
    c = (a + b).scale(2.0)
    assert c.coefficient((0, 0)) == 2.0
    assert c.coefficient((1, 0)) == 0.0
    assert c.coefficient((0, 1)) == 10.0


def test_three_variable_product():
    s1 = TruncatedSeries.exp_linear((0.2, 0.1, -0.3), 8)
    s2 = TruncatedSeries.binomial_power((0.5, -0.2, 0.4), 3, 8)
    prod = s1 * s2
    pt = (0.07, -0.04, 0.06)
    exact = math.exp(0.2 * pt[0] + 0.1 * pt[1] - 0.3 * pt[2]) * (
        1 + 0.5 * pt[0] - 0.2 * pt[1] + 0.4 * pt[2]
    ) ** 3
    assert prod.evaluate(pt) == pytest.approx(exact, rel=1e-9)
