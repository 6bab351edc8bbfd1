"""Tests for I_{a,b}, T_k and the R-matrix R_{n,k}."""

import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose

sys.path.insert(0, str(Path(__file__).parent.parent))

from pyqnk.algebra import numerical_rank, principal_angles, relations, subspace_distance
from pyqnk.errors import DegenerateOverlap, DomainError
from pyqnk.heisenberg import omega
from pyqnk.modcore import AMALGAM_X, AMALGAM_Y, INVERSION, SL2Z
from pyqnk.rmatrix import (
    RParams, direct_r_matrix, holomorphy_residual, l_equivariance_check, leg12, leg23, op_I, proportionality,
    qybe_residual, r_matrix, swap, t_op, t_op_at_zero, theta_basis,
)
from pyqnk.theta import WIndex, e, w_uv

ETA = 0.13 + 0.21j
TAU = 1j


@pytest.fixture
def params31():
    return RParams(3, 1, ETA, TAU)


class TestOperators:
    def test_identity(self):
        assert_allclose(op_I(0, 0, 4), np.eye(4))

    def test_invertible(self):
        for a, b in ((1, 2), (2, 1), (3, 3)):
            op = op_I(a, b, 4)
            assert_allclose(op @ np.linalg.inv(op), np.eye(4), atol=1e-14)

    def test_commutation_scalar(self):
        n = 3
        i11, i10 = op_I(1, 1, n), op_I(1, 0, n)
        assert_allclose(i11 @ i10, i10 @ i11 / omega(n), atol=1e-14)

    def test_swap(self):
        n = 3
        p = swap(n)
        a = np.arange(9).reshape(3, 3).astype(complex)
        b = np.diag([1.0, 2.0, 5.0]).astype(complex)
        assert_allclose(p @ p, np.eye(n * n))
        assert_allclose(p @ np.kron(a, b) @ p, np.kron(b, a))

    def test_legs(self):
        op = np.arange(16).reshape(4, 4)
        assert leg12(op, 2).shape == (8, 8)
        assert_allclose(leg23(op, 2), np.kron(np.eye(2), op))


class TestParams:
    def test_k_prime(self):
        assert RParams(5, 2, ETA, TAU).k_prime == 3

    @pytest.mark.parametrize("n,k", [(4, 2), (3, 3), (3, 0)])
    def test_invalid_nk(self, n, k):
        with pytest.raises(DomainError):
            RParams(n, k, ETA, TAU)

    def test_im_tau_floor(self):
        with pytest.raises(DomainError):
            RParams(3, 1, ETA, 0.01j)

    def test_moved(self, params31):
        moved = params31.moved(INVERSION)
        assert moved.tau == pytest.approx(-1 / TAU)
        assert moved.eta == pytest.approx(ETA / TAU)


class TestTOperator:
    def test_n2_against_hand_expansion(self):
        params = RParams(2, 1, ETA, TAU)
        z = 0.12 - 0.05j
        g = np.diag([1, -1]).astype(complex)
        h = np.array([[0, 1], [1, 0]], dtype=complex)
        expected = np.zeros((4, 4), dtype=complex)
        for u in range(2):
            for v in range(2):
                # I_{-u,v} with k' = 1
                op = np.linalg.matrix_power(h, u % 2) @ np.linalg.matrix_power(g, v)
                weight = w_uv(WIndex(u, v, 2), 2, -2 * z, ETA, TAU)
                expected += weight * np.kron(op, np.linalg.inv(op))
        assert_allclose(t_op(params, z), expected, atol=1e-13)

    def test_value_at_zero(self, params31):
        assert_allclose(t_op(params31, 0), t_op_at_zero(params31), atol=1e-13)

    def test_norm_bound(self, params31):
        z = 0.2 + 0.1j
        weights = sum(abs(w_uv(WIndex(u, v, 3), 3, -3 * z, ETA, TAU)) for u in range(3) for v in range(3))
        assert np.linalg.norm(t_op(params31, z), 2) <= weights * (1 + 1e-12)


class TestRMatrix:
    def test_prefactor(self, params31):
        z = 0.07 + 0.02j
        expected = e(-6 * z) / 3 * (swap(3) @ t_op(params31, z))
        assert_allclose(r_matrix(params31, z), expected, atol=1e-13)

    def test_image_same_as_swapped_t(self, params31):
        z = ETA
        r = r_matrix(params31, z)
        pt = swap(3) @ t_op(params31, z)
        ur = np.linalg.svd(r)[0][:, :3]
        upt = np.linalg.svd(pt)[0][:, :3]
        assert np.max(principal_angles(ur, upt)) < 1e-10

    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
    def test_qybe(self, n, k):
        params = RParams(n, k, ETA, TAU)
        assert qybe_residual(params, 0.1 + 0.05j, -0.07 + 0.12j) < 1e-8

    def test_holomorphic_in_z(self, params31):
        assert holomorphy_residual(params31, 0.11 - 0.04j) < 1e-6


class TestThetaBasis:
    @pytest.mark.parametrize("alpha", [0, 1, 2])
    def test_functional_equations(self, alpha):
        n, tau, z = 3, 0.1 + 1.2j, 0.21 + 0.13j
        base = theta_basis(alpha, n, z, tau)
        assert theta_basis(alpha, n, z + 1, tau) == pytest.approx(base, rel=1e-11)
        expected = -e(-n * z) * base
        assert theta_basis(alpha, n, z + tau, tau) == pytest.approx(expected, rel=1e-11)

    def test_theta_zero_vanishes_at_origin(self):
        assert abs(theta_basis(0, 3, 0, 1j)) < 1e-12

    @pytest.mark.parametrize("n", [3, 4])
    def test_uniform_shift(self, n):
        tau, z = 0.1 + 1.2j, 0.21 + 0.13j
        factor = e(-z - 1 / (2 * n) + (n - 1) * tau / (2 * n))
        for alpha in range(n):
            shifted = theta_basis(alpha, n, z + tau / n, tau)
            assert shifted == pytest.approx(factor * theta_basis(alpha + 1, n, z, tau), rel=1e-10)


class TestDirectRMatrix:
    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1)])
    def test_image_is_relation_space(self, n, k):
        params = RParams(n, k, 0.11 + 0.06j, 0.2 + 1.1j)
        direct = direct_r_matrix(params, params.eta)
        rank = numerical_rank(direct)
        assert rank == n * (n - 1) // 2
        u = np.linalg.svd(direct)[0][:, :rank]
        assert subspace_distance(u, relations(params).basis) < 1e-7

    def test_preserves_index_sum(self, params31):
        direct = direct_r_matrix(params31, 0.07 - 0.03j)
        n = 3
        for row, col in zip(*np.nonzero(np.abs(direct) > 1e-14)):
            assert (row // n + row % n) % n == (col // n + col % n) % n


class TestProportionality:
    def test_scalar_multiple(self):
        rng = np.random.Generator(np.random.PCG64(7))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        result = proportionality(2.5j * b, b)
        assert result.scalar == pytest.approx(2.5j)
        assert result.deviation < 1e-14
        assert result.overlap == 16

    def test_degenerate_overlap(self):
        a = np.ones((4, 4))
        b = np.zeros((4, 4))
        b[0, 0] = 1
        with pytest.raises(DegenerateOverlap):
            proportionality(a, b)


class TestLEquivariance:
    def test_identity(self, params31):
        report = l_equivariance_check(params31, SL2Z.identity(), 0.1 + 0.05j)
        (record,) = report.records
        assert record.passed
        assert record.details["scalar"] == pytest.approx([1.0, 0.0])

    @pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (5, 2)])
    def test_amalgam_x(self, n, k):
        params = RParams(n, k, 0.11 + 0.06j, 0.2 + 1.1j)
        report = l_equivariance_check(params, AMALGAM_X, params.eta)
        (record,) = report.records
        assert record.check_id == "rmatrix.l_equivariance"
        assert record.passed, record.value

    @pytest.mark.parametrize("word", ["YX", "X^-1 Y"])
    @pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (5, 2)])
    def test_amalgam_words(self, word, n, k):
        m = AMALGAM_Y @ AMALGAM_X if word == "YX" else AMALGAM_X.inverse() @ AMALGAM_Y
        params = RParams(n, k, 0.11 + 0.06j, 0.2 + 1.1j)
        (record,) = l_equivariance_check(params, m, params.eta).records
        assert record.passed, record.value
