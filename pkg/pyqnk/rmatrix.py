"""
The operators I_{a,b}, T_k(z, eta | tau) and R_{n,k}(z, eta | tau) on V (x) V.

V has basis x_0, ..., x_{n-1}; V (x) V is ordered x_i (x) x_j -> i*n + j,
so the first tensor leg varies slowest and np.kron builds leg products.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from . import heisenberg
from .errors import DegenerateOverlap, DomainError
from .heisenberg import HeisElt, HeisRep
from .modcore import SL2Z, ModularTriple, act_triple, k_prime, m_prime
from .report import DEFAULT_TOLERANCES, CheckRecord, Report
from .theta import DEFAULT_PARAMS, MIN_IM_TAU, ThetaParams, WIndex, e, vartheta, w_uv

logger = logging.getLogger(__name__)

PROPORTIONALITY_CUTOFF = 1e-10
MIN_OVERLAP_FRACTION = 0.1


@dataclass(frozen=True)
class RParams:
    """Data (n, k, eta | tau) of an R-matrix."""
    n: int
    k: int
    eta: complex
    tau: complex
    theta: ThetaParams = field(default=DEFAULT_PARAMS)
    convention: str = "rmatrix"

    def __post_init__(self):
        if not (self.n > self.k >= 1) or gcd(self.n, self.k) != 1:
            raise DomainError(f"need coprime n > k >= 1, got n={self.n}, k={self.k}")
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "tau", complex(self.tau))
        if self.tau.imag < MIN_IM_TAU:
            raise DomainError(f"Im(tau)={self.tau.imag:.3g} is below {MIN_IM_TAU}")
        if self.convention not in ("rmatrix", "algebra"):
            raise DomainError(f"unknown convention: {self.convention}")

    @property
    def k_prime(self) -> int:
        return k_prime(self.n, self.k)

    @property
    def rep(self) -> HeisRep:
        return heisenberg.rep(self.n).get(self.convention)

    def moved(self, m: SL2Z) -> "RParams":
        """Parameters at M > (eta | tau)."""
        image = act_triple(m, ModularTriple(0, self.eta, self.tau))
        return RParams(self.n, self.k, image.eta, image.tau, self.theta, self.convention)

    def with_eta(self, eta: complex) -> "RParams":
        return RParams(self.n, self.k, eta, self.tau, self.theta, self.convention)


def op_I(a: int, b: int, n: int, convention: str = "rmatrix") -> np.ndarray:
    """I_{a,b} = h^a g^b."""
    rep = heisenberg.rep(n).get(convention)
    return np.linalg.matrix_power(rep.rho_T, a % n) @ np.linalg.matrix_power(rep.rho_S, b % n)


def swap(n: int) -> np.ndarray:
    """P: x_i (x) x_j -> x_j (x) x_i."""
    p = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            p[j * n + i, i * n + j] = 1
    return p


def _term_operators(params: RParams) -> dict[tuple[int, int], np.ndarray]:
    n, kp = params.n, params.k_prime
    terms = {}
    for u in range(n):
        for v in range(n):
            op = op_I(-kp * u, v, n, params.convention)
            terms[(u, v)] = np.kron(op, np.linalg.inv(op))
    return terms


def t_op(params: RParams, z: complex) -> np.ndarray:
    """T_k(z, eta | tau) = sum_(u,v) w_(u,v)(-nz, eta | tau) I_{-k'u,v} (x) I_{-k'u,v}^-1."""
    n = params.n
    total = np.zeros((n * n, n * n), dtype=complex)
    for (u, v), term in _term_operators(params).items():
        total += w_uv(WIndex(u, v, n), n, -n * z, params.eta, params.tau, params.theta) * term
    return total


def t_op_at_zero(params: RParams) -> np.ndarray:
    """sum_(u,v) I_{-k'u,v} (x) I_{-k'u,v}^-1, the value of T_k at z = 0."""
    return sum(_term_operators(params).values())


def r_prefactor(n: int, z: complex) -> complex:
    return e(-0.5 * n * (n + 1) * z) / n


def r_matrix(params: RParams, z: complex) -> np.ndarray:
    """R_{n,k}(z, eta | tau) = (1/n) e(-n(n+1)z/2) P T_k(z, eta | tau)."""
    return r_prefactor(params.n, z) * (swap(params.n) @ t_op(params, z))


def relation_operator(params: RParams) -> np.ndarray:
    """R_{n,k}(eta, eta | tau), whose image spans the quadratic relations."""
    return r_matrix(params, params.eta)


def leg12(op: np.ndarray, n: int) -> np.ndarray:
    return np.kron(op, np.eye(n))


def leg23(op: np.ndarray, n: int) -> np.ndarray:
    return np.kron(np.eye(n), op)


def qybe_residual(params: RParams, u: complex, v: complex) -> float:
    """||R(u)_12 R(u+v)_23 R(v)_12 - R(v)_23 R(u+v)_12 R(u)_23||_F / ||lhs||_F."""
    n = params.n
    ru, rv, ruv = r_matrix(params, u), r_matrix(params, v), r_matrix(params, u + v)
    lhs = leg12(ru, n) @ leg23(ruv, n) @ leg12(rv, n)
    rhs = leg23(rv, n) @ leg12(ruv, n) @ leg23(ru, n)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs))


def commutant_residual(params: RParams, z: complex) -> float:
    """max_x ||[T_k(z), rho(x) (x) rho(x)]||_F / ||T_k(z)||_F over x in {T, S}."""
    t = t_op(params, z)
    rep = params.rep
    worst = 0.0
    for x in (HeisElt.T(params.n), HeisElt.S(params.n)):
        rho = rep.matrix(x)
        diag = np.kron(rho, rho)
        worst = max(worst, float(np.linalg.norm(t @ diag - diag @ t) / np.linalg.norm(t)))
    return worst


def holomorphy_residual(params: RParams, z: complex, h: float = 1e-4) -> float:
    """Cauchy-Riemann defect of R in z from fourth-order central differences."""

    def derivative(direction: complex) -> np.ndarray:
        step = h * direction
        return (
            -r_matrix(params, z + 2 * step) + 8 * r_matrix(params, z + step)
            - 8 * r_matrix(params, z - step) + r_matrix(params, z - 2 * step)
        ) / (12 * h)

    dx = derivative(1)
    dy = derivative(1j)
    dbar = 0.5 * (dx + 1j * dy)
    scale = max(np.abs(dx).max(), np.abs(r_matrix(params, z)).max())
    return float(np.abs(dbar).max() / scale)


def theta_basis(alpha: int, n: int, z: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> complex:
    """theta_alpha(z) = sum_(m = alpha mod n) c_m e(m z), c_m = e(m/2n + m(m-n) tau/2n).

    Satisfies f(z+1) = f(z), f(z+tau) = -e(-nz) f(z), and the uniform shift
    theta_alpha(z + tau/n) = e(-z - 1/2n + (n-1) tau/2n) theta_(alpha+1)(z).
    """
    alpha %= n
    shifted = n * z + (alpha - 0.5 * n) * tau + 0.5
    scale = e(alpha / (2 * n) + alpha * (alpha - n) * tau / (2 * n))
    return scale * e(alpha * z) * vartheta(shifted, n * tau, p)


def direct_r_matrix(params: RParams, z: complex) -> np.ndarray:
    """R_{n,k}(z, eta | tau) from the theta-basis formula.

    Maps x_i (x) x_j into span{x_(j-r) (x) x_(i+r)}; at z = eta its image is
    the relation space.
    """
    n, k, eta, tau, p = params.n, params.k, params.eta, params.tau, params.theta
    at_minus_z = [theta_basis(a, n, -z, tau, p) for a in range(n)]
    at_zero = [theta_basis(a, n, 0, tau, p) for a in range(1, n)]
    prefactor = np.prod(at_minus_z) / np.prod(at_zero)
    result = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for r in range(n):
                coefficient = theta_basis(j - i + r * (k - 1), n, -z + eta, tau, p) / (
                    at_minus_z[(j - i - r) % n] * theta_basis(k * r, n, eta, tau, p)
                )
                result[((j - r) % n) * n + (i + r) % n, i * n + j] += prefactor * coefficient
    return result


@dataclass(frozen=True)
class Proportionality:
    scalar: complex
    deviation: float
    overlap: int


def proportionality(a: np.ndarray, b: np.ndarray, cutoff: float = PROPORTIONALITY_CUTOFF) -> Proportionality:
    """Scalar s with A ~ s B and the relative deviation max|A - sB| / max|A|."""
    mask = np.abs(b) > cutoff * np.abs(b).max()
    nonzero = int(np.count_nonzero(np.abs(a) > cutoff * np.abs(a).max()))
    overlap = int(mask.sum())
    if overlap == 0 or overlap < MIN_OVERLAP_FRACTION * nonzero:
        raise DegenerateOverlap(f"only {overlap} entries above cutoff out of {nonzero} nonzeros")
    ratios = a[mask] / b[mask]
    scalar = complex(np.median(ratios.real), np.median(ratios.imag))
    deviation = float(np.abs(a - scalar * b).max() / np.abs(a).max())
    return Proportionality(scalar, deviation, overlap)


def l_equivariance_check(params: RParams, m: SL2Z, z: complex, tol: Optional[float] = None) -> Report:
    """R at M > (z, eta | tau) against (psi(M') (x) psi(M')) R(z, eta | tau) (psi(M') (x) psi(M'))^-1."""
    if tol is None:
        tol = DEFAULT_TOLERANCES["rmatrix.l_equivariance"]
    start = time.perf_counter()
    image = act_triple(m, ModularTriple(z, params.eta, params.tau))
    moved = RParams(params.n, params.k, image.eta, image.tau, params.theta, params.convention)

    mp = m_prime(m, params.n, params.k)
    psi = heisenberg.intertwiner(mp, params.rep).psi
    psi2 = np.kron(psi, psi)
    a = r_matrix(moved, image.z)
    b = psi2 @ r_matrix(params, z) @ np.linalg.inv(psi2)
    result = proportionality(a, b)
    logger.debug("l-equivariance M=%s: scalar %s deviation %.3g", m, result.scalar, result.deviation)
    deviation = result.deviation
    if not (abs(result.scalar) > 0 and math.isfinite(abs(result.scalar))):
        deviation = math.inf

    common = dict(n=params.n, k=params.k, eta=params.eta, tau=params.tau, matrix=m.entries)
    elapsed = time.perf_counter() - start
    report = Report()
    report.add(CheckRecord.measure(
        "rmatrix.l_equivariance", "residual", deviation, tol,
        wall_time=elapsed,
        details={"m_prime": list(mp.entries), "overlap": result.overlap,
                 "scalar": [result.scalar.real, result.scalar.imag]},
        **common,
    ))
    return report
