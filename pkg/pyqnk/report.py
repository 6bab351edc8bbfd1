"""
Check records, reports, and the structured-text report writer.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from . import __version__

# Default tolerance per check id. Checks whose metric is a lower bound
# (the intertwiner null-space gap) pass when value >= tol.
DEFAULT_TOLERANCES: dict[str, float] = {
    "theta.jacobi": 1e-10,
    "theta.quasi_periodicity": 1e-11,
    "theta.zero": 1e-9,
    "theta.modular_root": 1e-9,
    "w.periodicity": 1e-11,
    "w.cocycle_independence": 1e-9,
    "w.f_translation": 1e-9,
    "w.f_inversion": 1e-9,
    "w.same_zeros": 1e-9,
    "heisenberg.exact": 0.0,
    "intertwiner.residual": 1e-10,
    "intertwiner.gap": 1e6,
    "rmatrix.qybe": 1e-8,
    "rmatrix.commutant": 1e-10,
    "rmatrix.holomorphy": 1e-6,
    "rmatrix.direct_image": 1e-7,
    "rmatrix.l_equivariance": 1e-7,
    "algebra.rank": 0.0,
    "algebra.hilbert": 0.0,
    "algebra.invariance": 1e-8,
    "algebra.eta_shift": 1e-8,
    "algebra.modular_isom": 1e-7,
    "algebra.modular_isom_reverse": 1e-7,
    "algebra.modular_isom_agreement": 1e-8,
    "algebra.image_invariance": 1e-8,
    "algebra.conjugate_invariance": 1e-8,
    "algebra.congruence_equality": 1e-8,
    "algebra.lattice_iso": 1e-7,
}

LOWER_BOUND_CHECKS = frozenset({"intertwiner.gap"})


def format_float(value: float) -> str:
    """17 significant digits; non-finite values spelled inf, -inf, nan."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def passes(check_id: str, value: float, tol: float) -> bool:
    if math.isnan(value):
        return False
    if check_id in LOWER_BOUND_CHECKS:
        return value >= tol
    return value <= tol


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one verified identity at one parameter point."""
    check_id: str
    metric: str
    value: float
    tol: float
    passed: bool
    n: Optional[int] = None
    k: Optional[int] = None
    eta: Optional[complex] = None
    tau: Optional[complex] = None
    matrix: Optional[tuple[int, int, int, int]] = None
    informational: bool = False
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    @classmethod
    def measure(cls, check_id: str, metric: str, value: float, tol: float, **kwargs) -> "CheckRecord":
        return cls(check_id, metric, float(value), float(tol), passes(check_id, float(value), tol), **kwargs)

    @property
    def sort_key(self) -> tuple:
        eta = self.eta if self.eta is not None else 0j
        tau = self.tau if self.tau is not None else 0j
        return (
            self.check_id,
            self.n or 0,
            self.k or 0,
            self.matrix or (0, 0, 0, 0),
            eta.real, eta.imag, tau.real, tau.imag,
        )

    def to_dict(self) -> dict:
        result: dict[str, Any] = {
            "check_id": self.check_id,
            "n": self.n,
            "k": self.k,
            "eta_re": None if self.eta is None else self.eta.real,
            "eta_im": None if self.eta is None else self.eta.imag,
            "tau_re": None if self.tau is None else self.tau.real,
            "tau_im": None if self.tau is None else self.tau.imag,
            "matrix": None if self.matrix is None else list(self.matrix),
            "metric": self.metric,
            "value": self.value,
            "tol": self.tol,
            "pass": self.passed,
            "informational": self.informational,
            "wall_time": self.wall_time,
        }
        if self.details:
            result["details"] = dict(self.details)
        return result


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)
    seed: Optional[int] = None
    config: dict = field(default_factory=dict)
    version: str = __version__

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)

    def sorted(self) -> "Report":
        return Report(sorted(self.records, key=lambda r: r.sort_key), self.seed, dict(self.config), self.version)

    def find(self, check_id: str) -> list[CheckRecord]:
        return [r for r in self.records if r.check_id == check_id]

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed and not r.informational]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "total": len(self.records),
            "passed": sum(r.passed for r in self.records),
            "failed": len(self.failures),
            "informational_failed": sum(1 for r in self.records if r.informational and not r.passed),
        }

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "config": dict(self.config),
            "summary": self.summary(),
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def to_text(self) -> str:
        """The report as a structured-text document (see document.lark)."""
        lines = ["report {"]
        lines.append(f"  version = {_format_value(self.version)}")
        lines.append(f"  seed = {_format_value(self.seed)}")
        lines.extend(_format_block("config", self.config, 1))
        lines.extend(_format_block("summary", self.summary(), 1))
        for record in self.records:
            lines.extend(_format_block("record", record.to_dict(), 1))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _format_value(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, complex):
        return f"[{format_float(value.real)}, {format_float(value.imag)}]"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return json.dumps(str(value))


def _format_block(key: str, values: dict, depth: int) -> list[str]:
    pad = "  " * depth
    lines = [f"{pad}{key} {{"]
    for name, value in values.items():
        if isinstance(value, dict):
            lines.extend(_format_block(name, value, depth + 1))
        else:
            lines.append(f"{pad}  {name} = {_format_value(value)}")
    lines.append(f"{pad}}}")
    return lines
