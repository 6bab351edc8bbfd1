"""
Exception hierarchy for pyqnk.
"""

from typing import Optional


class QnkError(Exception):
    """Base class for all pyqnk errors."""
    pass


class InvalidMatrix(QnkError, ValueError):
    """Integer matrix does not have determinant +1 (or +1 mod n)."""
    pass


class DomainError(QnkError, ValueError):
    """Parameter outside the supported domain (e.g. Im(tau) too small)."""
    pass


class TruncationOverflow(QnkError):
    """Theta series needs more terms than the configured cap."""
    pass


class SingularEta(QnkError):
    """eta lies in (or numerically too close to) an excluded set."""
    pass


class ParityViolation(QnkError, ValueError):
    """ab or cd is odd where the theta modular identity needs them even."""
    pass


class MixedN(QnkError, ValueError):
    """Heisenberg elements from groups of different order."""
    pass


class NoIntertwiner(QnkError):
    """The Schur system for psi(M) does not have a one-dimensional solution space."""
    pass


class NotALatticeIso(QnkError):
    """A complex scalar does not map one lattice onto the other."""
    pass


class EtaMismatch(QnkError):
    """u*eta1 - eta2 is not a lattice vector."""
    pass


class RankMismatch(QnkError):
    """Relation spaces being compared have different ranks."""
    pass


class DegenerateOverlap(QnkError):
    """Too few entries survive the cutoff for a proportionality test."""
    pass


class ConfigError(QnkError):
    """Invalid suite configuration."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
