"""
Exact SL(2,Z) arithmetic and the modular action on (z, eta | tau).

Matrices are frozen dataclasses over Python ints, so products never overflow.
The action is

    M > (z, eta | tau) = (z/(c tau + d), eta/(c tau + d) | (a tau + b)/(c tau + d)).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import DomainError, InvalidMatrix, NotALatticeIso

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SL2Z:
    """Integer matrix [[a, b], [c, d]] with ad - bc = 1."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise InvalidMatrix(f"entry {name}={value!r} is not an integer")
            object.__setattr__(self, name, int(value))
        if self.a * self.d - self.b * self.c != 1:
            raise InvalidMatrix(f"determinant of {self.entries} is {self.det}, expected 1")

    @classmethod
    def identity(cls) -> "SL2Z":
        return cls(1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "SL2Z") -> "SL2Z":
        return SL2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "SL2Z":
        return SL2Z(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Z":
        return SL2Z(self.d, -self.b, -self.c, self.a)

    def transpose(self) -> "SL2Z":
        return SL2Z(self.a, self.c, self.b, self.d)

    def inverse_transpose(self) -> "SL2Z":
        return SL2Z(self.d, -self.c, -self.b, self.a)

    def power(self, exponent: int) -> "SL2Z":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = SL2Z.identity()
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def mod(self, n: int) -> "SL2Zn":
        return SL2Zn(self.a, self.b, self.c, self.d, n)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class SL2Zn:
    """Element of SL(2, Z_n); entries stored reduced into [0, n)."""
    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"modulus must be at least 2, got {self.n}")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)) % self.n)
        if (self.a * self.d - self.b * self.c) % self.n != 1:
            raise InvalidMatrix(f"determinant of {self.entries} is not 1 mod {self.n}")

    @classmethod
    def identity(cls, n: int) -> "SL2Zn":
        return cls(1, 0, 0, 1, n)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def __matmul__(self, other: "SL2Zn") -> "SL2Zn":
        if other.n != self.n:
            raise InvalidMatrix(f"cannot multiply matrices mod {self.n} and mod {other.n}")
        return SL2Zn(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.n,
        )

    def lift(self) -> SL2Z:
        return lift_mod_n(self)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.n}"


@dataclass(frozen=True)
class ModularTriple:
    """A point (z, eta | tau) of C x C x H."""
    z: complex
    eta: complex
    tau: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "tau", complex(self.tau))
        if not self.tau.imag > 0:
            raise DomainError(f"tau={self.tau} is not in the upper half-plane")


# generators of the Z_4 and Z_6 factors in the amalgam Z_4 *_{Z_2} Z_6
AMALGAM_X = SL2Z(0, 1, -1, 0)
AMALGAM_Y = SL2Z(1, 1, -1, 0)
# inversion and translation, the pair used for the w-cocycle
INVERSION = SL2Z(0, -1, 1, 0)
TRANSLATION = SL2Z(1, 1, 0, 1)

GENERATOR_PAIRS = {
    "amalgam": (AMALGAM_X, AMALGAM_Y),
    "translation": (INVERSION, TRANSLATION),
}


@dataclass(frozen=True)
class GenWord:
    """A word in the generators X, Y of a pair, times -I when `negate` is set.

    Tokens are "X", "X^-1", "Y", "Y^-1".
    """
    tokens: tuple[str, ...]
    negate: bool = False
    pair: str = "amalgam"

    def generator(self, token: str) -> SL2Z:
        x, y = GENERATOR_PAIRS[self.pair]
        base = x if token[0] == "X" else y
        return base.inverse() if token.endswith("^-1") else base

    def evaluate(self) -> SL2Z:
        result = SL2Z.identity()
        for token in self.tokens:
            result = result @ self.generator(token)
        return -result if self.negate else result

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        body = " ".join(self.tokens) if self.tokens else "1"
        return f"-{body}" if self.negate else body


def act_triple(m: SL2Z, p: ModularTriple) -> ModularTriple:
    """Apply M to (z, eta | tau)."""
    j = m.c * p.tau + m.d
    return ModularTriple(p.z / j, p.eta / j, (m.a * p.tau + m.b) / j)


def act_tau(m: SL2Z, tau: complex) -> complex:
    return (m.a * tau + m.b) / (m.c * tau + m.d)


def act_row(u: int, v: int, m: Union[SL2Z, SL2Zn], n: int) -> tuple[int, int]:
    """Right action (u, v) -> (u, v) M on Z_n^2."""
    return ((u * m.a + v * m.c) % n, (u * m.b + v * m.d) % n)


def transport_period(m: SL2Z, s: int, t: int) -> tuple[int, int]:
    """The (s', t') with M > (z + s tau + t) = z' + s' tau' + t'."""
    return (m.d * s - m.c * t, m.a * t - m.b * s)


def _euclid_steps(m: SL2Z) -> tuple[list[tuple[str, int]], bool]:
    """Write M = T^q1 S T^q2 S ... T^qr (+-I) with S = INVERSION, T = TRANSLATION."""
    a, b, c, d = m.entries
    steps: list[tuple[str, int]] = []
    while c != 0:
        q = round(Fraction(a, c))
        if q:
            steps.append(("T", q))
            a, b = a - q * c, b - q * d
        steps.append(("S", 1))
        a, b, c, d = c, d, -a, -b
    negate = a == -1
    tail = -b if negate else b
    if tail:
        steps.append(("T", tail))
    return steps, negate


def _reduce_amalgam(tokens: list[str], negate: bool) -> tuple[tuple[str, ...], bool]:
    # X^-1 = -X, Y^-1 = -Y^2, X^2 = -I, Y^3 = -I
    stack: list[str] = []
    for token in tokens:
        if token == "X^-1":
            negate = not negate
            expanded = ["X"]
        elif token == "Y^-1":
            negate = not negate
            expanded = ["Y", "Y"]
        else:
            expanded = [token]
        for letter in expanded:
            stack.append(letter)
            if stack[-2:] == ["X", "X"]:
                del stack[-2:]
                negate = not negate
            elif stack[-3:] == ["Y", "Y", "Y"]:
                del stack[-3:]
                negate = not negate
    return tuple(stack), negate


def decompose(m: SL2Z, pair: str = "amalgam") -> GenWord:
    """Deterministic word for M in a generator pair.

    The Euclidean reduction on the first column is done in the inversion /
    translation pair; for the amalgam pair each step is rewritten with
    S = X^-1 and T = X Y^-1 and the result reduced with X^2 = Y^3 = -I.
    """
    if pair not in GENERATOR_PAIRS:
        raise ValueError(f"unknown generator pair: {pair}")
    steps, negate = _euclid_steps(m)
    tokens: list[str] = []
    if pair == "translation":
        for kind, power in steps:
            if kind == "S":
                tokens.append("X")
            else:
                tokens.extend(["Y" if power > 0 else "Y^-1"] * abs(power))
        return GenWord(tuple(tokens), negate, pair)

    for kind, power in steps:
        if kind == "S":
            tokens.append("X^-1")
        elif power > 0:
            tokens.extend(["X", "Y^-1"] * power)
        else:
            tokens.extend(["Y", "X^-1"] * -power)
    reduced, negate = _reduce_amalgam(tokens, negate)
    logger.debug("decompose %s -> %d tokens", m, len(reduced))
    return GenWord(reduced, negate, pair)


def _check_nk(n: int, k: int) -> None:
    if not (n > k >= 1):
        raise DomainError(f"need n > k >= 1, got n={n}, k={k}")
    if gcd(n, k) != 1:
        raise DomainError(f"n={n} and k={k} are not coprime")


def k_prime(n: int, k: int) -> int:
    """The k' in [1, n) with k k' = 1 mod n."""
    _check_nk(n, k)
    return pow(k, -1, n)


def m_prime(m: Union[SL2Z, SL2Zn], n: int, k: int) -> SL2Zn:
    """Image of M' = D^-1 M^-t D in SL(2, Z_n), D = diag(-k, 1).

    Exactly, M' = [[d, c/k], [bk, a]]; mod n the entry c/k becomes c k'.
    """
    kp = k_prime(n, k)
    return SL2Zn(m.d, m.c * kp, m.b * k, m.a, n)


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s x + t y = g = gcd(x, y)."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def lift_mod_n(m: SL2Zn) -> SL2Z:
    """Some M in SL(2, Z) reducing to the given element of SL(2, Z_n)."""
    n = m.n
    d = m.d if m.d else n
    c = m.c
    while gcd(c, d) != 1:
        c += n
    g, x, y = _ext_gcd(d, c)
    a0, b0 = x, -y
    s = (a0 * (m.b - b0) - b0 * (m.a - a0)) % n
    lifted = SL2Z(a0 + s * c, b0 + s * d, c, d)
    if lifted.mod(n) != m:
        raise InvalidMatrix(f"lift {lifted.entries} of {m} does not reduce back mod {n}")
    return lifted


# recover_sl2 tolerances
INTEGER_TOL = 1e-6
RESIDUAL_TOL = 1e-9


def _nearest_integer(x: float, what: str) -> int:
    r = round(x)
    if abs(x - r) > INTEGER_TOL:
        raise NotALatticeIso(f"{what}={x!r} is not within {INTEGER_TOL} of an integer")
    return int(r)


def recover_sl2(tau1: complex, tau2: complex, u: complex) -> SL2Z:
    """The M with 1 = u(c tau1 + d) and tau2 = u(a tau1 + b)."""
    tau1, tau2, u = complex(tau1), complex(tau2), complex(u)
    if tau1.imag <= 0 or tau2.imag <= 0:
        raise DomainError("tau1 and tau2 must lie in the upper half-plane")
    if u == 0:
        raise NotALatticeIso("u must be nonzero")

    inv = 1 / u
    c_real = inv.imag / tau1.imag
    d_real = inv.real - c_real * tau1.real
    w = tau2 / u
    a_real = w.imag / tau1.imag
    b_real = w.real - a_real * tau1.real

    a = _nearest_integer(a_real, "a")
    b = _nearest_integer(b_real, "b")
    c = _nearest_integer(c_real, "c")
    d = _nearest_integer(d_real, "d")

    scale = 1 + abs(tau2)
    if abs(u * (c * tau1 + d) - 1) > RESIDUAL_TOL * scale or abs(u * (a * tau1 + b) - tau2) > RESIDUAL_TOL * scale:
        raise NotALatticeIso("rounded matrix does not reproduce the lattice map")
    if a * d - b * c != 1:
        raise NotALatticeIso(f"recovered matrix {(a, b, c, d)} has determinant {a * d - b * c}")
    return SL2Z(a, b, c, d)


def lattice_coordinates(w: complex, tau: complex) -> tuple[float, float]:
    """Real (x, y) with w = x + y tau."""
    y = w.imag / tau.imag
    return (w.real - y * tau.real, y)
