"""
Q_{n,k}(eta | tau) at desk scale: the quadratic relation space, graded
dimensions up to degree 3, and the modular isomorphism tests.
"""

import logging
import time
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np
from scipy import linalg

from . import heisenberg
from .errors import DomainError, EtaMismatch, RankMismatch
from .heisenberg import HeisElt
from .modcore import SL2Z, lattice_coordinates, m_prime, recover_sl2
from .report import DEFAULT_TOLERANCES, CheckRecord, Report
from .rmatrix import RParams, relation_operator

logger = logging.getLogger(__name__)

RANK_CUTOFF = 1e-9
LATTICE_TOL = 1e-8


@dataclass(frozen=True)
class RelationSpace:
    """Orthonormal basis (columns) of the image of R_{n,k}(eta, eta | tau)."""
    params: RParams
    basis: np.ndarray
    singular_values: np.ndarray

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def rank(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class GradedDims:
    dims: tuple[int, ...]

    def expected(self) -> tuple[int, ...]:
        """Dimensions of the polynomial ring on n generators."""
        n = self.dims[1]
        return tuple(comb(n + d - 1, d) for d in range(len(self.dims)))

    @property
    def matches_polynomial_ring(self) -> bool:
        return self.dims == self.expected()


def numerical_rank(matrix: np.ndarray, cutoff: float = RANK_CUTOFF) -> int:
    s = linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


def relations(params: RParams) -> RelationSpace:
    r = relation_operator(params)
    u, s, _ = linalg.svd(r)
    rank = int(np.sum(s > RANK_CUTOFF * s[0]))
    logger.debug("relations n=%d k=%d eta=%s: rank %d", params.n, params.k, params.eta, rank)
    return RelationSpace(params, u[:, :rank], s)


def graded_dims(rel: RelationSpace, maxdeg: int = 3) -> GradedDims:
    """dim Q_d for d <= maxdeg; degree 3 from the rank of [R (x) V | V (x) R]."""
    if not 0 <= maxdeg <= 3:
        raise DomainError(f"graded dimensions are computed up to degree 3, got {maxdeg}")
    n = rel.n
    dims = [1, n, n * n - rel.rank]
    if maxdeg >= 3:
        eye = np.eye(n)
        stacked = np.hstack([np.kron(rel.basis, eye), np.kron(eye, rel.basis)])
        dims.append(n ** 3 - numerical_rank(stacked))
    return GradedDims(tuple(dims[: maxdeg + 1]))


def principal_angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Principal angles between the column spaces of A and B, largest first."""
    return linalg.subspace_angles(a, b)


def subspace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest principal angle; inf when the dimensions differ."""
    if numerical_rank(a) != numerical_rank(b):
        return float("inf")
    return float(np.max(principal_angles(a, b)))


def invariance_angle(rel: RelationSpace, op: np.ndarray) -> float:
    """Largest principal angle between op(W) and W."""
    return subspace_distance(op @ rel.basis, rel.basis)


def heisenberg_invariance(rel: RelationSpace, convention: str = "algebra") -> float:
    """max over x in {S, T} of the angle between (rho(x) (x) rho(x)) W and W."""
    rep = heisenberg.rep(rel.n).get(convention)
    worst = 0.0
    for x in (HeisElt.S(rel.n), HeisElt.T(rel.n)):
        rho = rep.matrix(x)
        worst = max(worst, invariance_angle(rel, np.kron(rho, rho)))
    return worst


def conjugate_invariance(rel: RelationSpace, psi: np.ndarray, rep: heisenberg.HeisRep) -> float:
    """max over x in {S, T} of the angle between (op (x) op) W and W, op = psi rho(x) psi^-1."""
    worst = 0.0
    for x in (HeisElt.S(rel.n), HeisElt.T(rel.n)):
        op = psi @ rep.matrix(x) @ np.linalg.inv(psi)
        worst = max(worst, invariance_angle(rel, np.kron(op, op)))
    return worst


def _record_fields(params: RParams, m: Optional[SL2Z]) -> dict:
    return dict(n=params.n, k=params.k, eta=params.eta, tau=params.tau,
                matrix=None if m is None else m.entries)


def modular_isom_check(params: RParams, m: SL2Z, tol: Optional[float] = None) -> Report:
    """(psi(M') (x) psi(M')) W(eta | tau) against W(M > (eta | tau))."""
    if tol is None:
        tol = DEFAULT_TOLERANCES["algebra.modular_isom"]
    start = time.perf_counter()
    w1 = relations(params)
    w2 = relations(params.moved(m))
    if w1.rank != w2.rank:
        raise RankMismatch(f"rank {w1.rank} at (eta|tau) but {w2.rank} at M > (eta|tau) for M={m}")

    mp = m_prime(m, params.n, params.k)
    psi = heisenberg.intertwiner(mp, params.rep).psi
    psi2 = np.kron(psi, psi)
    forward = float(np.max(principal_angles(psi2 @ w1.basis, w2.basis)))
    reverse = float(np.max(principal_angles(np.linalg.solve(psi2, w2.basis), w1.basis)))
    logger.debug("modular isom M=%s M'=%s: angles %.3g / %.3g", m, mp, forward, reverse)

    fields = _record_fields(params, m)
    details = {"m_prime": list(mp.entries), "rank": w1.rank}
    elapsed = time.perf_counter() - start
    report = Report()
    report.add(CheckRecord.measure("algebra.modular_isom", "angle", forward, tol,
                                   wall_time=elapsed, details=details, **fields))
    report.add(CheckRecord.measure("algebra.modular_isom_reverse", "angle", reverse,
                                   DEFAULT_TOLERANCES["algebra.modular_isom_reverse"],
                                   details=details, **fields))
    report.add(CheckRecord.measure("algebra.modular_isom_agreement", "angle", abs(forward - reverse),
                                   DEFAULT_TOLERANCES["algebra.modular_isom_agreement"],
                                   details=details, **fields))
    report.add(CheckRecord.measure("algebra.image_invariance", "angle", heisenberg_invariance(w2),
                                   DEFAULT_TOLERANCES["algebra.image_invariance"], **fields))
    report.add(CheckRecord.measure("algebra.conjugate_invariance", "angle",
                                   conjugate_invariance(w2, psi, params.rep),
                                   DEFAULT_TOLERANCES["algebra.conjugate_invariance"], **fields))
    expected = params.n * (params.n - 1) // 2
    report.add(CheckRecord.measure("algebra.rank", "rank", abs(w2.rank - expected),
                                   DEFAULT_TOLERANCES["algebra.rank"],
                                   details={"rank": w2.rank, "expected": expected}, **fields))
    return report


def lattice_offset(w: complex, tau: complex) -> tuple[int, int, float]:
    """Nearest lattice point s tau + t to w, and the distance to it."""
    x, y = lattice_coordinates(complex(w), complex(tau))
    t, s = round(x), round(y)
    return s, t, abs(complex(w) - (s * tau + t))


def isom_from_lattice_iso(tau1: complex, eta1: complex, tau2: complex, eta2: complex, u: complex,
                          n: int, k: int, tol: Optional[float] = None) -> Report:
    """Recover M from u Lambda_tau1 = Lambda_tau2 and run the modular isomorphism check."""
    m = recover_sl2(tau1, tau2, u)
    s, t, distance = lattice_offset(u * eta1 - eta2, tau2)
    if distance > LATTICE_TOL * (1 + abs(tau2)):
        raise EtaMismatch(f"u*eta1 - eta2 = {u * eta1 - eta2} is not in the lattice of {tau2}")
    params = RParams(n, k, eta1, tau1)
    report = modular_isom_check(params, m, tol)

    # W depends on eta only mod the lattice of tau2
    target = RParams(n, k, eta2, tau2)
    angle = subspace_distance(relations(target).basis, relations(params.moved(m)).basis)
    report.add(CheckRecord.measure(
        "algebra.lattice_iso", "angle", angle, DEFAULT_TOLERANCES["algebra.lattice_iso"],
        details={"shift": [s, t]}, **_record_fields(target, m),
    ))
    return report
