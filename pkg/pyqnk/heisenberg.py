"""
The Heisenberg group H~_n, its SL(2, Z) automorphisms, and the intertwiners
of its n-dimensional representation.

Elements are kept in the normal form T^a S^b nu^c with nu^2 = eps = [S, T].
For odd n we take nu = eps^((n+1)/2), so nu has order n; for even n it has
order 2n.
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import linalg

from .errors import DomainError, MixedN, NoIntertwiner
from .modcore import SL2Z, SL2Zn, lift_mod_n

logger = logging.getLogger(__name__)

NULL_CUTOFF = 1e-9


def nu_order(n: int) -> int:
    return 2 * n if n % 2 == 0 else n


@dataclass(frozen=True)
class HeisElt:
    """T^t_exp S^s_exp nu^nu_exp in H~_n."""
    t_exp: int
    s_exp: int
    nu_exp: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n must be at least 2, got {self.n}")
        object.__setattr__(self, "t_exp", self.t_exp % self.n)
        object.__setattr__(self, "s_exp", self.s_exp % self.n)
        object.__setattr__(self, "nu_exp", self.nu_exp % nu_order(self.n))

    @classmethod
    def identity(cls, n: int) -> "HeisElt":
        return cls(0, 0, 0, n)

    @classmethod
    def T(cls, n: int) -> "HeisElt":
        return cls(1, 0, 0, n)

    @classmethod
    def S(cls, n: int) -> "HeisElt":
        return cls(0, 1, 0, n)

    @classmethod
    def nu(cls, n: int) -> "HeisElt":
        return cls(0, 0, 1, n)

    @classmethod
    def eps(cls, n: int) -> "HeisElt":
        return cls(0, 0, 2, n)

    @property
    def is_central(self) -> bool:
        return self.t_exp == 0 and self.s_exp == 0

    def __mul__(self, other: "HeisElt") -> "HeisElt":
        return mul(self, other)

    def __pow__(self, m: int) -> "HeisElt":
        return power(self, m)

    def inverse(self) -> "HeisElt":
        a, b = self.t_exp, self.s_exp
        return HeisElt(-a, -b, 2 * a * b - self.nu_exp, self.n)

    def __str__(self) -> str:
        return f"T^{self.t_exp} S^{self.s_exp} nu^{self.nu_exp}"


def mul(x: HeisElt, y: HeisElt) -> HeisElt:
    """Normal form of xy, using S^b T^a = T^a S^b eps^(ab)."""
    if x.n != y.n:
        raise MixedN(f"cannot multiply elements of H~_{x.n} and H~_{y.n}")
    return HeisElt(
        x.t_exp + y.t_exp,
        x.s_exp + y.s_exp,
        x.nu_exp + y.nu_exp + 2 * y.t_exp * x.s_exp,
        x.n,
    )


def power(x: HeisElt, m: int) -> HeisElt:
    base = x if m >= 0 else x.inverse()
    m = abs(m)
    result = HeisElt.identity(x.n)
    while m:
        if m & 1:
            result = mul(result, base)
        base = mul(base, base)
        m >>= 1
    return result


def commutator(x: HeisElt, y: HeisElt) -> HeisElt:
    """x y x^-1 y^-1."""
    return mul(mul(x, y), mul(x.inverse(), y.inverse()))


@dataclass(frozen=True)
class HeisMap:
    """Endomorphism of H~_n given by the images of T and S and nu -> nu^nu_power."""
    image_t: HeisElt
    image_s: HeisElt
    nu_power: int = 1

    @property
    def n(self) -> int:
        return self.image_t.n

    def __call__(self, x: HeisElt) -> HeisElt:
        if x.n != self.n:
            raise MixedN(f"map on H~_{self.n} applied to an element of H~_{x.n}")
        return mul(
            mul(power(self.image_t, x.t_exp), power(self.image_s, x.s_exp)),
            HeisElt(0, 0, x.nu_exp * self.nu_power, x.n),
        )

    def compose(self, inner: "HeisMap") -> "HeisMap":
        """self o inner."""
        return HeisMap(self(inner.image_t), self(inner.image_s), self.nu_power * inner.nu_power)

    def is_identity(self) -> bool:
        n = self.n
        return self.image_t == HeisElt.T(n) and self.image_s == HeisElt.S(n) and self.nu_power % nu_order(n) == 1


def _integer_matrix(m: Union[SL2Z, SL2Zn]) -> SL2Z:
    return lift_mod_n(m) if isinstance(m, SL2Zn) else m


@dataclass(frozen=True)
class PsiAuto:
    """The automorphism Psi_M: T -> T^a S^c nu^(ac), S -> T^b S^d nu^(bd), nu -> nu."""
    matrix: SL2Z
    n: int

    def __call__(self, x: HeisElt) -> HeisElt:
        if x.n != self.n:
            raise MixedN(f"Psi on H~_{self.n} applied to an element of H~_{x.n}")
        a, b, c, d = self.matrix.entries
        m, r = x.t_exp, x.s_exp
        z = a * c * m * m + b * d * r * r + 2 * b * c * m * r
        return HeisElt(a * m + b * r, c * m + d * r, z + x.nu_exp, self.n)

    def as_map(self) -> HeisMap:
        return HeisMap(self(HeisElt.T(self.n)), self(HeisElt.S(self.n)))

    def is_trivial(self) -> bool:
        return self.as_map().is_identity()


def psi_auto(m: Union[SL2Z, SL2Zn], n: int) -> PsiAuto:
    return PsiAuto(_integer_matrix(m), n)


def psi_prime_auto(a: int, b: int, c: int, d: int, n: int) -> HeisMap:
    """T -> T^a S^c, S -> T^b S^d, eps -> eps^det for odd n and det = +-1.

    Unlike psi_auto this carries no nu corrections; M -> Psi'_M is not a
    group homomorphism.
    """
    if n % 2 == 0:
        raise DomainError(f"Psi' is only defined for odd n, got n={n}")
    det = a * d - b * c
    if det not in (1, -1):
        raise DomainError(f"matrix {(a, b, c, d)} is not in GL(2, Z)")
    return HeisMap(HeisElt(a, c, 0, n), HeisElt(b, d, 0, n), det)


def amalgam_generators(n: int) -> tuple[HeisMap, HeisMap]:
    """Psi_X: T -> S^-1, S -> T and Psi_Y: T -> T S^-1 nu^-1, S -> T."""
    psi_x = HeisMap(HeisElt(0, -1, 0, n), HeisElt(1, 0, 0, n))
    psi_y = HeisMap(HeisElt(1, -1, -1, n), HeisElt(1, 0, 0, n))
    return psi_x, psi_y


@dataclass(frozen=True)
class HeisRep:
    """Matrices of T, S and nu on V = C^n in one convention."""
    n: int
    rho_T: np.ndarray
    rho_S: np.ndarray
    rho_nu: np.ndarray
    convention: str

    def matrix(self, x: HeisElt) -> np.ndarray:
        t = np.linalg.matrix_power(self.rho_T, x.t_exp)
        s = np.linalg.matrix_power(self.rho_S, x.s_exp)
        return (t @ s) * self.rho_nu[0, 0] ** x.nu_exp


def omega(n: int) -> complex:
    return complex(np.exp(2j * np.pi / n))


def algebra_action(n: int) -> HeisRep:
    """S x_i = omega^i x_i, T x_i = x_(i+1), nu = -e(1/2n)."""
    shift = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    diag = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    nu = -np.exp(1j * np.pi / n) * np.eye(n, dtype=complex)
    return HeisRep(n, shift, diag, nu, "algebra")


def rmatrix_action(n: int) -> HeisRep:
    """S -> g, T -> h with g x_i = omega^i x_i, h x_i = x_(i-1); eps acts as omega^-1."""
    shift = np.roll(np.eye(n, dtype=complex), -1, axis=0)
    diag = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    nu = -np.exp(-1j * np.pi / n) * np.eye(n, dtype=complex)
    return HeisRep(n, shift, diag, nu, "rmatrix")


@dataclass(frozen=True)
class HeisReps:
    algebra_action: HeisRep
    rmatrix_action: HeisRep

    def get(self, convention: str) -> HeisRep:
        if convention == "algebra":
            return self.algebra_action
        if convention == "rmatrix":
            return self.rmatrix_action
        raise ValueError(f"unknown convention: {convention}")


def rep(n: int) -> HeisReps:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    return HeisReps(algebra_action(n), rmatrix_action(n))


@dataclass(frozen=True)
class Intertwiner:
    """psi with rho(Psi_M(x)) = psi rho(x) psi^-1."""
    M: SL2Z
    psi: np.ndarray
    gap: float

    @property
    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.psi)

    def residual(self, rep: HeisRep, x: HeisElt) -> float:
        """||rho(Psi_M(x)) psi - psi rho(x)||_F / ||psi||_F."""
        image = rep.matrix(psi_auto(self.M, rep.n)(x))
        diff = image @ self.psi - self.psi @ rep.matrix(x)
        return float(np.linalg.norm(diff) / np.linalg.norm(self.psi))


def _normalize(psi: np.ndarray) -> np.ndarray:
    column = psi[:, 0]
    cutoff = 1e-12 * np.abs(psi).max()
    first = column[np.abs(column) > cutoff][0]
    psi = psi * (abs(first) / first)
    return psi * (math.sqrt(psi.shape[0]) / np.linalg.norm(psi))


def intertwiner(m: Union[SL2Z, SL2Zn], rep: HeisRep) -> Intertwiner:
    """Solve the Schur system for psi(M) as a null space."""
    n = rep.n
    matrix = _integer_matrix(m)
    auto = psi_auto(matrix, n)
    if auto.is_trivial():
        return Intertwiner(matrix, np.eye(n, dtype=complex), math.inf)

    eye = np.eye(n, dtype=complex)
    blocks = []
    for x in (HeisElt.T(n), HeisElt.S(n)):
        a = rep.matrix(auto(x))
        b = rep.matrix(x)
        # column-major vec: vec(A X - X B) = (I (x) A - B^T (x) I) vec(X)
        blocks.append(np.kron(eye, a) - np.kron(b.T, eye))
    system = np.vstack(blocks)
    _, s, vh = linalg.svd(system)
    cutoff = NULL_CUTOFF * s[0]
    nullity = int(np.sum(s < cutoff))
    logger.debug("intertwiner %s n=%d: nullity %d, smallest singular values %s", matrix, n, nullity, s[-2:])
    if nullity != 1:
        raise NoIntertwiner(f"Schur system for {matrix} at n={n} has nullity {nullity}")
    gap = float(s[-2] / s[-1]) if s[-1] > 0 else math.inf
    psi = vh[-1].conj().reshape((n, n), order="F")
    return Intertwiner(matrix, _normalize(psi), gap)
