"""
Verification suites: theta, heisenberg, qybe, modular, algebra.
"""

from .config import SuiteConfig, load_config
from .runner import run_suite

__all__ = ["SuiteConfig", "load_config", "run_suite"]
