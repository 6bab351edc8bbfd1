"""
Theta functions, theta functions with characteristics, and the normalized
ratios w_(u,v) built from them.

The basic function is

    vartheta(z | tau) = sum_{m in Z} e(m z + m^2 tau / 2),   e(x) = exp(2 pi i x),

summed over a symmetric window |m| <= N chosen from the term-magnitude bound.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError, ParityViolation, SingularEta, TruncationOverflow
from .modcore import SL2Z, GenWord, ModularTriple, act_row, act_triple, decompose

logger = logging.getLogger(__name__)

Real = Union[Fraction, float, int]

MIN_IM_TAU = 0.05
SINGULAR_RELATIVE = 1e-13
COCYCLE_AGREEMENT = 1e-8
COCYCLE_SPREAD = 1e-9


def e(x: complex) -> complex:
    """e(x) = exp(2 pi i x)."""
    return cmath.exp(2j * math.pi * x)


@dataclass(frozen=True)
class ThetaParams:
    trunc_tol: float = 1e-14
    max_terms: int = 512

    def __post_init__(self):
        if not self.trunc_tol > 0:
            raise DomainError(f"trunc_tol must be positive, got {self.trunc_tol}")
        if self.max_terms < 8:
            raise DomainError(f"max_terms must be at least 8, got {self.max_terms}")


DEFAULT_PARAMS = ThetaParams()


@dataclass(frozen=True)
class Characteristic:
    """Real characteristic (u, v); exact rationals are kept as Fractions."""
    u: Real
    v: Real


@dataclass(frozen=True)
class WIndex:
    """Index (u, v) in Z_n^2, reduced mod n."""
    u: int
    v: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be positive, got {self.n}")
        object.__setattr__(self, "u", int(self.u) % self.n)
        object.__setattr__(self, "v", int(self.v) % self.n)

    def characteristic(self) -> Characteristic:
        return Characteristic(Fraction(self.u, self.n), Fraction(self.v, self.n))

    def times(self, m: SL2Z) -> "WIndex":
        """The index (u, v) M."""
        u, v = act_row(self.u, self.v, m, self.n)
        return WIndex(u, v, self.n)


def all_indices(n: int) -> list[WIndex]:
    return [WIndex(u, v, n) for u in range(n) for v in range(n)]


def truncation_order(z: complex, tau: complex, params: ThetaParams = DEFAULT_PARAMS) -> int:
    """Smallest N with exp(-pi Im(tau) N^2 + 2 pi N |Im z|) < trunc_tol."""
    tau = complex(tau)
    if tau.imag < MIN_IM_TAU:
        raise DomainError(f"Im(tau)={tau.imag:.3g} is below {MIN_IM_TAU}")
    y = tau.imag
    a = abs(complex(z).imag)
    budget = -math.log(params.trunc_tol)
    root = (a + math.sqrt(a * a + y * budget / math.pi)) / y
    order = max(1, math.floor(root) + 1)
    if order > params.max_terms:
        raise TruncationOverflow(
            f"theta series needs {order} terms at z={z}, tau={tau} (cap {params.max_terms})"
        )
    return order


def _series(z: complex, tau: complex, params: ThetaParams) -> tuple[complex, float]:
    """Truncated theta sum and the sum of the absolute values of its terms."""
    order = truncation_order(z, tau, params)
    m = np.arange(-order, order + 1, dtype=float)
    terms = np.exp(2j * np.pi * (m * z + 0.5 * m * m * tau))
    return complex(terms.sum()), float(np.abs(terms).sum())


def vartheta(z: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> complex:
    value, _ = _series(complex(z), complex(tau), p)
    return value


def _theta_uv_scaled(ch: Characteristic, z: complex, tau: complex, params: ThetaParams) -> tuple[complex, float]:
    u = float(ch.u)
    v = float(ch.v)
    prefactor = e(u * (z + v) + 0.5 * u * u * tau)
    value, scale = _series(z + u * tau + v, tau, params)
    return prefactor * value, abs(prefactor) * scale


def theta_uv(ch: Characteristic, z: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> complex:
    """theta_{u,v}(z | tau) = e(u(z + v) + u^2 tau / 2) vartheta(z + u tau + v | tau)."""
    z, tau = complex(z), complex(tau)
    if ch.u == 0 and ch.v == 0:
        return vartheta(z, tau, p)
    value, _ = _theta_uv_scaled(ch, z, tau, p)
    return value


def zeta_shift(eta: complex, tau: complex) -> complex:
    """zeta = eta + (tau + 1)/2."""
    return eta + 0.5 * (tau + 1)


def _denominator(idx: WIndex, eta: complex, tau: complex, params: ThetaParams) -> tuple[complex, float]:
    return _theta_uv_scaled(idx.characteristic(), zeta_shift(eta, tau), tau, params)


def w_uv(idx: WIndex, n: int, z: complex, eta: complex, tau: complex,
         p: ThetaParams = DEFAULT_PARAMS) -> complex:
    """w_(u,v)(z, eta | tau) = theta_{u/n,v/n}(z + zeta) / theta_{u/n,v/n}(zeta)."""
    if idx.n != n:
        idx = WIndex(idx.u, idx.v, n)
    z, eta, tau = complex(z), complex(eta), complex(tau)
    den, scale = _denominator(idx, eta, tau, p)
    if abs(den) < SINGULAR_RELATIVE * scale:
        raise SingularEta(f"theta_(u,v)(zeta) vanishes for (u,v)=({idx.u},{idx.v}), n={n}, eta={eta}")
    ch = idx.characteristic()
    num, _ = _theta_uv_scaled(ch, z + zeta_shift(eta, tau), tau, p)
    return num / den


def min_relative_denominator(n: int, eta: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> float:
    """Smallest |theta_(u,v)(zeta)| / scale over all (u, v) in Z_n^2."""
    smallest = math.inf
    for idx in all_indices(n):
        den, scale = _denominator(idx, complex(eta), complex(tau), p)
        smallest = min(smallest, abs(den) / scale)
    return smallest


def w_zero(idx: WIndex, n: int, eta: complex, tau: complex) -> complex:
    """The zero -eta - (u tau + v)/n of w_(u,v) (unique modulo the lattice)."""
    return -eta - (idx.u * tau + idx.v) / n


def w_factor_of_automorphy(idx: WIndex, n: int, s: int, t: int, z: complex, eta: complex, tau: complex) -> complex:
    """The factor with w(z + s tau + t) = factor * w(z)."""
    return e(-s * (z + eta) - 0.5 * s * (s * tau + tau + 1) + (t * idx.u - s * idx.v) / n)


def _principal_sqrt(x: complex) -> complex:
    root = cmath.sqrt(x)
    if root.real == 0 and root.imag < 0:
        root = -root
    return root


def jacobi_residual(z: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> float:
    """Relative residual of vartheta(z/tau | -1/tau) = sqrt(-i tau) e(z^2/2tau) vartheta(z | tau)."""
    z, tau = complex(z), complex(tau)
    if abs(tau) < 1e-12:
        raise DomainError("tau too close to 0")
    lhs = vartheta(z / tau, -1 / tau, p)
    rhs = _principal_sqrt(-1j * tau) * e(z * z / (2 * tau)) * vartheta(z, tau, p)
    denom = abs(lhs) + abs(rhs)
    if denom == 0:
        return 0.0
    return abs(lhs - rhs) / denom


def modular_root(m: SL2Z, z: complex, tau: complex, p: ThetaParams = DEFAULT_PARAMS) -> complex:
    """The eighth root of unity in the modular identity for vartheta.

    Needs ab and cd even. The square root of c tau + d is the principal one,
    with purely imaginary ties resolved toward positive imaginary part.
    """
    if (m.a * m.b) % 2 or (m.c * m.d) % 2:
        raise ParityViolation(f"{m} needs ab and cd even")
    z, tau = complex(z), complex(tau)
    j = m.c * tau + m.d
    image_tau = (m.a * tau + m.b) / j
    lhs = vartheta(z / j, image_tau, p)
    rhs = _principal_sqrt(j) * e(m.c * z * z / (2 * j)) * vartheta(z, tau, p)
    return lhs / rhs


# Cocycle f_M of the w-transformation law
#     w_{(u,v)M}(p) = f_M(p) w_{(u,v)}(M > p),
# composed along a word in the inversion/translation pair with
#     f_{MN}(p) = f_N(p) f_M(N > p).

def f_inversion(p: ModularTriple) -> complex:
    """f_X for X = [[0, -1], [1, 0]]."""
    z, eta, tau = p.z, p.eta, p.tau
    return e(-z * z / (2 * tau) + (1 / (2 * tau) - 0.5 - eta / tau) * z)


def f_translation(p: ModularTriple) -> complex:
    """f_Y for Y = [[1, 1], [0, 1]]."""
    return 1.0 + 0j


def _generator_factor(word: GenWord, token: str, p: ModularTriple) -> complex:
    if token == "X":
        return f_inversion(p)
    if token == "X^-1":
        return 1 / f_inversion(act_triple(word.generator(token), p))
    return f_translation(p)


def cocycle_from_word(m: SL2Z, p: ModularTriple) -> complex:
    word = decompose(m, pair="translation")
    tokens = list(word.tokens)
    if word.negate:
        tokens += ["X", "X"]
    f = 1.0 + 0j
    q = p
    for token in reversed(tokens):
        f *= _generator_factor(word, token, q)
        q = act_triple(word.generator(token), q)
    return f


@dataclass(frozen=True)
class CocycleRatios:
    """The n^2 measured ratios w_{(u,v)M}(p) / w_{(u,v)}(M > p)."""
    ratios: np.ndarray
    median: complex
    spread: float


def cocycle_ratios(m: SL2Z, z: complex, eta: complex, tau: complex, n: int,
                   p: ThetaParams = DEFAULT_PARAMS) -> CocycleRatios:
    point = ModularTriple(z, eta, tau)
    image = act_triple(m, point)
    ratios = np.empty((n, n), dtype=complex)
    for idx in all_indices(n):
        moved = idx.times(m)
        num = w_uv(moved, n, point.z, point.eta, point.tau, p)
        den = w_uv(idx, n, image.z, image.eta, image.tau, p)
        ratios[idx.u, idx.v] = num / den
    flat = ratios.ravel()
    median = complex(np.median(flat.real), np.median(flat.imag))
    spread = float(np.max(np.abs(flat - median)) / abs(median)) if median != 0 else math.inf
    return CocycleRatios(ratios, median, spread)


def w_transform_cocycle(m: SL2Z, z: complex, eta: complex, tau: complex, n: int,
                        p: ThetaParams = DEFAULT_PARAMS) -> complex:
    """The factor f_M(z) of the w-transformation law.

    The measured median ratio is returned; the value composed along the
    generator word is only compared against it.
    """
    measured = cocycle_ratios(m, z, eta, tau, n, p)
    if measured.spread > COCYCLE_SPREAD:
        logger.warning("w ratios for M=%s spread by %.3g around %s", m, measured.spread, measured.median)
    composed = cocycle_from_word(m, ModularTriple(z, eta, tau))
    if abs(composed - measured.median) > COCYCLE_AGREEMENT * abs(measured.median):
        logger.warning(
            "word cocycle %s disagrees with measured %s for M=%s", composed, measured.median, m
        )
    return measured.median
