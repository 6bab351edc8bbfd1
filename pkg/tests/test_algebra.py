"""Tests for the relation space of Q_{n,k}(eta | tau) and the modular isomorphisms."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from pyqnk.algebra import (
    GradedDims, conjugate_invariance, graded_dims, heisenberg_invariance, isom_from_lattice_iso, lattice_offset,
    modular_isom_check, numerical_rank, relations, subspace_distance,
)
from pyqnk.errors import DomainError, EtaMismatch, NotALatticeIso
from pyqnk.heisenberg import intertwiner
from pyqnk.modcore import AMALGAM_X, AMALGAM_Y, SL2Z, m_prime
from pyqnk.rmatrix import RParams
from pyqnk.sampling import Sampler

ETA = 0.13 + 0.21j
TAU = 1j
NK = [(2, 1), (3, 1), (3, 2), (4, 1), (5, 2)]


@pytest.fixture(scope="module")
def rel31():
    return relations(RParams(3, 1, ETA, TAU))


class TestSubspaces:
    def test_numerical_rank(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
        assert numerical_rank(a) == 1
        assert numerical_rank(np.zeros((3, 3))) == 0

    def test_distance_of_same_span(self):
        a = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        b = a @ np.array([[2.0, 1.0], [1.0, 1.0]])
        assert subspace_distance(a, b) < 1e-12

    def test_distance_of_orthogonal_lines(self):
        a = np.array([[1.0], [0.0]])
        b = np.array([[0.0], [1.0]])
        assert subspace_distance(a, b) == pytest.approx(math.pi / 2)

    def test_distance_infinite_for_rank_mismatch(self):
        a = np.eye(3)[:, :2]
        b = np.eye(3)[:, :1]
        assert subspace_distance(a, b) == math.inf


class TestRelations:
    @pytest.mark.parametrize("n,k", NK)
    def test_rank(self, n, k):
        assert relations(RParams(n, k, ETA, TAU)).rank == n * (n - 1) // 2

    def test_basis_orthonormal(self, rel31):
        gram = rel31.basis.conj().T @ rel31.basis
        np.testing.assert_allclose(gram, np.eye(rel31.rank), atol=1e-12)

    def test_hilbert_series(self, rel31):
        dims = graded_dims(rel31)
        assert dims.dims == (1, 3, 6, 10)
        assert dims.matches_polynomial_ring

    def test_hilbert_series_n5(self):
        dims = graded_dims(relations(RParams(5, 2, ETA, TAU)))
        assert dims.dims[2] == 15
        assert dims.dims[3] == 35

    def test_degree_cap(self, rel31):
        with pytest.raises(DomainError):
            graded_dims(rel31, 4)
        assert graded_dims(rel31, 2).dims == (1, 3, 6)

    def test_expected_dims(self):
        assert GradedDims((1, 4, 10, 20)).expected() == (1, 4, 10, 20)

    def test_heisenberg_invariance(self, rel31):
        assert heisenberg_invariance(rel31) < 1e-8

    def test_eta_representative(self, rel31):
        for shift in (1, TAU, 2 * TAU - 1):
            shifted = relations(rel31.params.with_eta(ETA + shift))
            assert subspace_distance(rel31.basis, shifted.basis) < 1e-8


class TestModularIsomorphism:
    def test_identity(self):
        report = modular_isom_check(RParams(3, 2, ETA, TAU), SL2Z.identity())
        assert report.all_passed
        assert report.find("algebra.modular_isom")[0].value < 1e-10

    @pytest.mark.parametrize("m", [
        AMALGAM_X, AMALGAM_Y, AMALGAM_X @ AMALGAM_Y, AMALGAM_Y @ AMALGAM_X, AMALGAM_X.inverse() @ AMALGAM_Y,
    ])
    def test_headline(self, m):
        report = modular_isom_check(RParams(3, 2, 0.11 + 0.06j, 0.2 + 1.1j), m)
        assert report.all_passed, [r.to_dict() for r in report.failures]
        (record,) = report.find("algebra.modular_isom")
        assert record.details["rank"] == 3

    def test_forward_and_reverse_agree(self):
        report = modular_isom_check(RParams(3, 1, 0.11 + 0.06j, 0.2 + 1.1j), AMALGAM_Y @ AMALGAM_X)
        (forward,) = report.find("algebra.modular_isom")
        (reverse,) = report.find("algebra.modular_isom_reverse")
        (agreement,) = report.find("algebra.modular_isom_agreement")
        assert abs(forward.value - reverse.value) < 1e-8
        assert agreement.value == pytest.approx(abs(forward.value - reverse.value))
        assert not agreement.informational

    @pytest.mark.parametrize("m", [AMALGAM_X, AMALGAM_Y @ AMALGAM_X])
    def test_image_is_invariant(self, m):
        params = RParams(5, 2, 0.11 + 0.06j, 0.2 + 1.1j)
        image = relations(params.moved(m))
        assert heisenberg_invariance(image) < 1e-8
        psi = intertwiner(m_prime(m, 5, 2), params.rep).psi
        assert conjugate_invariance(image, psi, params.rep) < 1e-8
        report = modular_isom_check(params, m)
        for check_id in ("algebra.image_invariance", "algebra.conjugate_invariance"):
            (record,) = report.find(check_id)
            assert record.passed, record.value

    @pytest.mark.parametrize("n,k", [(2, 1), (4, 1), (5, 2)])
    def test_other_nk(self, n, k):
        sampler = Sampler(11)
        tau = sampler.tau()
        eta = sampler.eta(n, tau, also=[AMALGAM_X])
        report = modular_isom_check(RParams(n, k, eta, tau), AMALGAM_X)
        assert report.all_passed, [r.to_dict() for r in report.failures]

    @pytest.mark.parametrize("n,k", [(3, 1), (4, 1)])
    def test_congruence_equality(self, n, k):
        m = SL2Z(1, 0, n, 1)
        sampler = Sampler(3)
        tau = sampler.tau_for(m)
        eta = sampler.eta(n, tau, also=[m])
        params = RParams(n, k, eta, tau)
        direct = relations(params)
        moved = relations(params.moved(m))
        assert subspace_distance(direct.basis, moved.basis) < 1e-8


class TestLatticeIso:
    def test_translation(self):
        tau = 0.2 + 1.1j
        report = isom_from_lattice_iso(tau, ETA, tau + 1, ETA, 1, 3, 1)
        (record,) = report.find("algebra.lattice_iso")
        assert record.matrix == (1, 1, 0, 1)
        assert report.all_passed

    def test_inversion(self):
        tau = 0.2 + 1.1j
        report = isom_from_lattice_iso(tau, ETA, -1 / tau, ETA / tau, 1 / tau, 3, 1)
        (record,) = report.find("algebra.lattice_iso")
        assert record.matrix == (0, -1, 1, 0)
        assert report.all_passed

    def test_integer_shift_of_eta(self):
        tau = 0.2 + 1.1j
        report = isom_from_lattice_iso(tau, ETA, tau, ETA + 1, 1, 3, 1)
        (record,) = report.find("algebra.lattice_iso")
        assert record.details["shift"] == [0, -1]
        assert not record.informational
        assert record.passed

    def test_tau_shift_of_eta(self):
        tau = 0.2 + 1.1j
        report = isom_from_lattice_iso(tau, ETA, tau, ETA + tau, 1, 3, 1)
        (record,) = report.find("algebra.lattice_iso")
        assert record.details["shift"] == [-1, 0]
        assert not record.informational
        assert record.passed

    def test_mixed_shift_after_inversion(self):
        tau = 0.2 + 1.1j
        tau2 = -1 / tau
        report = isom_from_lattice_iso(tau, ETA, tau2, ETA / tau + tau2 - 1, 1 / tau, 3, 2)
        (record,) = report.find("algebra.lattice_iso")
        assert record.details["shift"] == [-1, 1]
        assert report.all_passed, [r.to_dict() for r in report.failures]

    def test_eta_mismatch(self):
        tau = 0.2 + 1.1j
        with pytest.raises(EtaMismatch):
            isom_from_lattice_iso(tau, ETA, tau + 1, ETA + 0.3, 1, 3, 1)

    def test_not_a_lattice_iso(self):
        with pytest.raises(NotALatticeIso):
            isom_from_lattice_iso(1j, ETA, 1j, ETA, 1.5, 3, 1)

    def test_lattice_offset(self):
        tau = 0.2 + 1.1j
        s, t, distance = lattice_offset(2 * tau - 3 + 1e-12, tau)
        assert (s, t) == (2, -3)
        assert distance < 1e-10
