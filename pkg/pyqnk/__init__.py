"""
pyqnk - construct the elliptic algebras Q_{n,k}(eta | tau) from theta
functions and machine-check their identities, including modular invariance.
"""

__version__ = "0.1.0"

from .algebra import graded_dims, modular_isom_check, relations  # noqa: E402
from .modcore import SL2Z, decompose, m_prime  # noqa: E402
from .report import CheckRecord, Report  # noqa: E402
from .rmatrix import RParams, r_matrix  # noqa: E402

__all__ = [
    "CheckRecord",
    "RParams",
    "Report",
    "SL2Z",
    "decompose",
    "graded_dims",
    "m_prime",
    "modular_isom_check",
    "r_matrix",
    "relations",
]
