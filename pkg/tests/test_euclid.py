import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from charlier_lab.euclid import (
    DegenerateParameterError,
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
from oracles import motion_matrix

nonzero = st.floats(0.2, 3.0).flatmap(lambda v: st.sampled_from([v, -v]))


class TestParams2:
    def test_zero_translation_rejected(self):
        with pytest.raises(ValueError):
            EuclidParams2(0.3, 0.0, 1.0)
        with pytest.raises(ValueError):
            EuclidParams2(0.3, 1.0, 0.0)

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            EuclidParams2(float("nan"), 1.0, 1.0)

    def test_json_round_trip(self):
        p = EuclidParams2(0.7, 1.25, -0.5)
        q = EuclidParams2.from_json(p.to_json())
        assert q == p
        assert set(json.loads(p.to_json())) == {"theta", "alpha", "beta"}


class TestDerive:
    def test_axis_aligned(self):
        d = derive(EuclidParams2(0.0, 1.0, 1.0))
        assert (d.omega, d.zeta) == (1.0, 1.0)
        assert (d.u11, d.u12, d.u21, d.u22) == (-1.0, 0.0, 0.0, -1.0)

    def test_quarter_turn_mixed(self):
        d = derive(EuclidParams2(math.pi / 4, 1.0, 2.0))
        assert d.u11 == pytest.approx(1.0, rel=1e-14)
        assert d.u12 == pytest.approx(-1.0 / 3.0, rel=1e-14)
        assert d.u21 == pytest.approx(-1.0 / 2.0, rel=1e-14)
        assert d.u22 == pytest.approx(-1.0 / 6.0, rel=1e-14)

    def test_degenerate_entries_absent(self):
        d = derive(EuclidParams2(math.pi / 4, 1.0, 1.0))
        assert d.u11 is None and d.u21 is None
        assert d.u12 is not None and d.u22 is not None
        assert d.omega == pytest.approx(0.0, abs=1e-15)

    @given(st.floats(-3, 3), nonzero, nonzero)
    def test_norm_preserved(self, theta, alpha, beta):
        d = derive(EuclidParams2(theta, alpha, beta))
        lhs = d.omega**2 + d.zeta**2
        rhs = alpha**2 + beta**2
        assert lhs == pytest.approx(rhs, rel=1e-13)

    @given(st.floats(-3, 3), nonzero, nonzero, st.floats(-2, 2), st.floats(-2, 2))
    def test_u_coefficients_pin_variable_change(self, theta, alpha, beta, x, y):
        # 1 + u11 z1 + u12 z2 at z1 = -x omega, z2 = -y zeta must reproduce
        # the first generating-function base 1 + (x/alpha) cos t + (y/alpha) sin t
        d = derive(EuclidParams2(theta, alpha, beta))
        if None in (d.u11, d.u12, d.u21, d.u22):
            return
        ct, st_ = math.cos(theta), math.sin(theta)
        lhs = 1 + d.u11 * (-x * d.omega) + d.u12 * (-y * d.zeta)
        rhs = 1 + (x / alpha) * ct + (y / alpha) * st_
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestDual:
    def test_axis_case(self):
        q = dual_params(EuclidParams2(0.0, 1.0, 2.0))
        assert (q.theta, q.alpha, q.beta) == (0.0, -1.0, -2.0)

    def test_quarter_turn(self):
        q = dual_params(EuclidParams2(math.pi / 2, 1.0, 1.0))
        assert q.theta == -math.pi / 2
        assert q.alpha == pytest.approx(1.0, rel=1e-15)
        assert q.beta == pytest.approx(-1.0, rel=1e-15)

    def test_degenerate_dual_raises(self):
        with pytest.raises(DegenerateParameterError):
            dual_params(EuclidParams2(math.pi / 4, 1.0, 1.0))

    @given(st.floats(-3, 3), nonzero, nonzero)
    def test_group_inverse_matrix_oracle(self, theta, alpha, beta):
        p = EuclidParams2(theta, alpha, beta)
        try:
            q = dual_params(p)
        except DegenerateParameterError:
            return
        prod = motion_matrix(q.theta, q.alpha, q.beta) @ motion_matrix(theta, alpha, beta)
        assert np.abs(prod - np.eye(3)).max() < 1e-13

    def test_involution(self):
        p = EuclidParams2(0.7, 1.2, -0.8)
        q = dual_params(dual_params(p))
        assert q.theta == pytest.approx(p.theta, abs=1e-15)
        assert q.alpha == pytest.approx(p.alpha, rel=1e-14)
        assert q.beta == pytest.approx(p.beta, rel=1e-14)

    def test_group_matrix_matches_oracle(self):
        p = EuclidParams2(0.3, 0.9, 1.1)
        assert np.abs(group_matrix(p) - motion_matrix(0.3, 0.9, 1.1)).max() == 0.0


class TestWeights:
    def test_ground_amplitude(self):
        p = EuclidParams2(0.5, 1.0, 1.0)
        assert weight_amp(p, 0, 0) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_symmetric_cell(self):
        p = EuclidParams2(0.2, 1.0, 1.0)
        assert weight_amp(p, 1, 1) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_amplitude_squares_to_weight(self):
        p = EuclidParams2(0.9, 0.7, 1.3)
        for i, k in [(0, 0), (2, 3), (5, 1)]:
            assert weight_amp(p, i, k) ** 2 == pytest.approx(weight(p, i, k), rel=1e-13)

    def test_total_mass(self):
        p = EuclidParams2(1.0, 0.8, 1.4)
        total = sum(weight(p, i, k) for i in range(40) for k in range(40))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_tilde_weight_basics(self):
        p = EuclidParams2(0.0, 1.0, 1.0)
        assert tilde_weight_amp(p, 0, 0) == pytest.approx(math.exp(-1.0), rel=1e-15)
        assert tilde_weight_amp(p, 1, 0) == pytest.approx(-math.exp(-1.0), rel=1e-15)

    def test_tilde_weight_is_dual_weight(self):
        p = EuclidParams2(0.8, 1.1, 0.6)
        q = dual_params(p)
        for i in range(5):
            for k in range(5):
                assert tilde_weight_amp(p, i, k) == pytest.approx(
                    weight_amp(q, i, k), abs=1e-14
                )


class TestAffineMap:
    def test_shift_values(self):
        p = EuclidParams2(0.4, 0.9, 1.2)
        mp = affine_map(p)
        ct, st_ = math.cos(0.4), math.sin(0.4)
        assert mp.a_shift == pytest.approx(-math.sqrt(2) * (0.9 * ct - 1.2 * st_), rel=1e-14)
        assert mp.b_shift == pytest.approx(-math.sqrt(2) * (0.9 * st_ + 1.2 * ct), rel=1e-14)

    def test_apply_is_isometry_plus_shift(self):
        p = EuclidParams2(1.1, 1.0, 0.5)
        mp = affine_map(p)
        x1, y1 = mp.apply(0.3, -0.7)
        x2, y2 = mp.apply(1.3, 0.3)
        moved = math.hypot(x2 - x1, y2 - y1)
        assert moved == pytest.approx(math.hypot(1.0, 1.0), rel=1e-13)


class TestParamsD:
    def test_validation(self):
        with pytest.raises(ValueError):
            EuclidParamsD(rotation=np.eye(3) * 2.0, alphas=np.ones(3))
        with pytest.raises(ValueError):
            EuclidParamsD(rotation=np.eye(3), alphas=np.array([1.0, 0.0, 1.0]))
        with pytest.raises(ValueError):
            EuclidParamsD(rotation=np.eye(3), alphas=np.ones(2))

    def test_json_round_trip(self):
        p = EuclidParamsD(rotation=np.eye(2), alphas=np.array([1.0, 2.0]))
        q = EuclidParamsD.from_json(p.to_json())
        assert np.array_equal(q.rotation, p.rotation)
        assert np.array_equal(q.alphas, p.alphas)
        assert set(json.loads(p.to_json())) == {"R", "alphas"}

    def test_immutable(self):
        p = EuclidParamsD(rotation=np.eye(2), alphas=np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            p.rotation[0, 0] = 5.0
