"""
Seeded samplers for parameter points (eta | tau), evaluation points and
random SL(2, Z) matrices.

All randomness goes through numpy.random.Generator(PCG64(seed)).
"""

import itertools
import logging
from math import gcd
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import SingularEta
from .modcore import SL2Z, act_tau, lattice_coordinates
from .theta import MIN_IM_TAU, min_relative_denominator

logger = logging.getLogger(__name__)

TORSION_ORDER = 12
TORSION_DISTANCE = 1e-3
EXCLUDED_SET_SCALE = 0.02
MIN_DENOMINATOR = 1e-10
MAX_ATTEMPTS = 200
SAMPLED_MIN_IM = 0.1
FIXED_POINT_JITTER = 0.1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def distance_to_torsion(eta: complex, tau: complex, order: int) -> float:
    """Approximate distance from eta to (1/order) Lambda_tau."""
    x, y = lattice_coordinates(complex(eta), complex(tau))
    nearest = (round(order * x) + round(order * y) * tau) / order
    return abs(eta - nearest)


def is_generic_eta(eta: complex, tau: complex, n: int) -> bool:
    """eta away from (1/n) Lambda_tau, from low-order torsion, and from zero denominators."""
    if distance_to_torsion(eta, tau, n) < EXCLUDED_SET_SCALE * np.sqrt(tau.imag):
        return False
    for order in range(1, TORSION_ORDER + 1):
        if distance_to_torsion(eta, tau, order) < TORSION_DISTANCE:
            return False
    return min_relative_denominator(n, eta, tau) >= MIN_DENOMINATOR


def tau_for_matrix(m: SL2Z, base: complex, offset: float = 0.0, min_im: float = MIN_IM_TAU) -> complex:
    """base when Im(M > base) >= min_im, otherwise (offset - d)/c + i/|c|.

    At the fallback point Im(M > tau) = Im(tau) / (1 + offset^2).
    """
    base = complex(base)
    if m.c == 0 or act_tau(m, base).imag >= min_im:
        return base
    return complex((-m.d + offset) / m.c, 1 / abs(m.c))


def random_sl2z(rng: np.random.Generator, bound: int) -> SL2Z:
    """Uniform bottom row (c, d) with |c|, |d| <= bound, completed within the bound."""
    while True:
        c, d = (int(x) for x in rng.integers(-bound, bound + 1, size=2))
        if gcd(c, d) != 1:
            continue
        for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
            if a * d - b * c == 1:
                return SL2Z(a, b, c, d)


class Sampler:
    """Draws parameters from explicit lists (cycled) or from the generator."""

    def __init__(self, seed: int, taus: Sequence[complex] = (), etas: Sequence[complex] = ()):
        self.rng = make_rng(seed)
        self._taus: Optional[Iterator[complex]] = itertools.cycle(taus) if taus else None
        self._etas: Optional[Iterator[complex]] = itertools.cycle(etas) if etas else None

    def uniform(self, low: float, high: float) -> float:
        return float(self.rng.uniform(low, high))

    def complex_box(self, radius: float) -> complex:
        return complex(self.uniform(-radius, radius), self.uniform(-radius, radius))

    def tau(self) -> complex:
        if self._taus is not None:
            return complex(next(self._taus))
        return complex(self.uniform(-0.5, 0.5), self.uniform(0.8, 1.5))

    def tau_for(self, m: SL2Z) -> complex:
        """A tau for checks of M. Explicit taus are used as given; a drawn tau
        whose image M > tau lies below SAMPLED_MIN_IM is moved next to the
        fixed circle of M.
        """
        if self._taus is not None:
            return complex(next(self._taus))
        tau = self.tau()
        offset = self.uniform(-FIXED_POINT_JITTER, FIXED_POINT_JITTER)
        return tau_for_matrix(m, tau, offset, SAMPLED_MIN_IM)

    def eta(self, n: int, tau: complex, also: Sequence[SL2Z] = ()) -> complex:
        """A generic eta for (n, tau), generic also at M > (eta | tau) for M in `also`."""
        if self._etas is not None:
            return complex(next(self._etas))
        for _ in range(MAX_ATTEMPTS):
            x, y = self.uniform(0, 1), self.uniform(0, 1)
            eta = x + y * tau
            if not is_generic_eta(eta, tau, n):
                continue
            if all(is_generic_eta(eta / (m.c * tau + m.d), act_tau(m, tau), n) for m in also):
                return eta
        raise SingularEta(f"no generic eta found for n={n}, tau={tau} after {MAX_ATTEMPTS} draws")

    def matrix(self, bound: int) -> SL2Z:
        return random_sl2z(self.rng, bound)
