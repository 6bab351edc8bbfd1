"""
SuiteConfig: what to run, on which parameters, with which tolerances.
"""

from dataclasses import dataclass, field, replace
from math import gcd
from typing import Any, Optional

from ..document import Block, DocumentParser, read_matrices
from ..errors import ConfigError, InvalidMatrix
from ..modcore import SL2Z
from ..report import DEFAULT_TOLERANCES
from ..theta import MIN_IM_TAU

SUITE_NAMES = ("theta", "heisenberg", "qybe", "modular", "algebra")
DEFAULT_NK = ((2, 1), (3, 1), (3, 2), (4, 1), (5, 2))


@dataclass(frozen=True)
class MatrixSource:
    """Explicit matrices, or `count` random ones with entries bounded by `bound`."""
    explicit: tuple[SL2Z, ...] = ()
    count: int = 5
    bound: int = 5


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    nk_list: tuple[tuple[int, int], ...] = DEFAULT_NK
    tau_list: tuple[complex, ...] = ()
    eta_list: tuple[complex, ...] = ()
    seed: int = 42
    draws: int = 20
    matrices: MatrixSource = field(default_factory=MatrixSource)
    tolerances: dict = field(default_factory=dict)
    out: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        validate(self)

    @property
    def suites(self) -> tuple[str, ...]:
        return SUITE_NAMES if self.suite == "all" else (self.suite,)

    def tol(self, check_id: str) -> float:
        return self.tolerances.get(check_id, DEFAULT_TOLERANCES[check_id])

    def echo(self) -> dict:
        """Config values as written into the report."""
        return {
            "suite": self.suite,
            "nk": [list(nk) for nk in self.nk_list],
            "tau": [[t.real, t.imag] for t in self.tau_list],
            "eta": [[e.real, e.imag] for e in self.eta_list],
            "draws": self.draws,
            "matrices": [list(m.entries) for m in self.matrices.explicit]
            or f"random:{self.matrices.count}:{self.matrices.bound}",
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def validate(config: SuiteConfig) -> None:
    if config.suite != "all" and config.suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {config.suite!r}", field="suite")
    if not config.nk_list:
        raise ConfigError("nk list is empty", field="nk")
    for n, k in config.nk_list:
        if not (n > k >= 1) or gcd(n, k) != 1:
            raise ConfigError(f"(n, k) = ({n}, {k}) must be coprime with n > k >= 1", field="nk")
    for tau in config.tau_list:
        if tau.imag < MIN_IM_TAU:
            raise ConfigError(f"Im(tau) of {tau} is below {MIN_IM_TAU}", field="tau")
    for check_id in config.tolerances:
        if check_id not in DEFAULT_TOLERANCES:
            raise ConfigError(f"unknown check id {check_id!r}", field="tolerances")
    if config.draws < 1:
        raise ConfigError("draws must be positive", field="draws")
    if config.jobs < 1:
        raise ConfigError("jobs must be positive", field="jobs")
    if config.matrices.count < 0 or config.matrices.bound < 1:
        raise ConfigError("random matrix count must be >= 0 and bound >= 1", field="matrices")


def parse_complex(text: str, field_name: str) -> complex:
    """Python complex literal; a trailing i is accepted for j."""
    cleaned = text.strip().replace(" ", "")
    if cleaned.endswith("i"):
        cleaned = cleaned[:-1] + "j"
    try:
        return complex(cleaned)
    except ValueError as e:
        raise ConfigError(f"cannot read {text!r} as a complex number", field=field_name) from e


def parse_nk(text: str) -> tuple[int, int]:
    try:
        n, k = (int(part) for part in text.split(","))
    except ValueError as e:
        raise ConfigError(f"expected 'n,k', got {text!r}", field="nk") from e
    return n, k


def parse_matrices(text: str) -> MatrixSource:
    """`random:COUNT:BOUND` or `file:PATH`."""
    kind, _, rest = text.partition(":")
    if kind == "random":
        try:
            count, bound = (int(part) for part in rest.split(":"))
        except ValueError as e:
            raise ConfigError(f"expected random:COUNT:BOUND, got {text!r}", field="matrices") from e
        return MatrixSource(count=count, bound=bound)
    if kind == "file":
        return MatrixSource(explicit=tuple(read_matrices(rest)), count=0)
    raise ConfigError(f"expected random:COUNT:BOUND or file:PATH, got {text!r}", field="matrices")


def parse_tolerance(text: str) -> tuple[str, float]:
    check_id, sep, value = text.partition("=")
    if not sep:
        raise ConfigError(f"expected check=value, got {text!r}", field="tol-override")
    try:
        return check_id.strip(), float(value)
    except ValueError as e:
        raise ConfigError(f"tolerance {value!r} is not a number", field="tol-override") from e


def _complex_entry(value: Any, field_name: str, line: Optional[int]) -> complex:
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    if isinstance(value, str):
        return parse_complex(value, field_name)
    raise ConfigError("expected [re, im] or a complex literal", field=field_name, line=line)


def _checked(block: Block, key: str, kind: type) -> Any:
    value = block.get(key)
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(f"expected {kind.__name__}", field=key, line=block.line_of(key))
    return value


def config_from_document(doc: Block) -> dict:
    """SuiteConfig keyword arguments read from a config document."""
    values: dict[str, Any] = {}
    if "suite" in doc:
        values["suite"] = _checked(doc, "suite", str)
    if "nk" in doc:
        pairs = _checked(doc, "nk", list)
        if not all(isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p) for p in pairs):
            raise ConfigError("expected a list of [n, k] pairs", field="nk", line=doc.line_of("nk"))
        values["nk_list"] = tuple(tuple(p) for p in pairs)
    for key, target in (("tau", "tau_list"), ("eta", "eta_list")):
        if key in doc:
            line = doc.line_of(key)
            values[target] = tuple(_complex_entry(v, key, line) for v in _checked(doc, key, list))
    for key in ("seed", "draws", "jobs"):
        if key in doc:
            values[key] = _checked(doc, key, int)
    if "out" in doc:
        values["out"] = _checked(doc, "out", str)
    if "matrices" in doc:
        values["matrices"] = parse_matrices(_checked(doc, "matrices", str))
    explicit = []
    for (key, value), line in zip(doc.entries, doc.lines):
        if key != "matrix":
            continue
        if not isinstance(value, list) or len(value) != 4 or not all(isinstance(x, int) for x in value):
            raise ConfigError("expected four integers", field="matrix", line=line)
        try:
            explicit.append(SL2Z(*value))
        except InvalidMatrix as e:
            raise ConfigError(str(e), field="matrix", line=line) from e
    if explicit:
        values["matrices"] = MatrixSource(explicit=tuple(explicit), count=0)
    tolerances = doc.get("tolerances")
    if tolerances is not None:
        if not isinstance(tolerances, Block):
            raise ConfigError("expected a block", field="tolerances", line=doc.line_of("tolerances"))
        values["tolerances"] = {key: float(_checked(tolerances, key, float)) for key in tolerances.keys()}
    return values


def load_config(path: str, **overrides: Any) -> SuiteConfig:
    values = config_from_document(DocumentParser().parse_file(path))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SuiteConfig(**values)


def with_overrides(config: SuiteConfig, **overrides: Any) -> SuiteConfig:
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})
