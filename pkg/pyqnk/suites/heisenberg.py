"""
Heisenberg suite: exact group identities in H~_n and the intertwiners psi(M).
"""

import numpy as np

from ..heisenberg import HeisElt, intertwiner, power, psi_auto, rep
from ..modcore import SL2Z
from ..report import DEFAULT_TOLERANCES, CheckRecord, Report
from ..sampling import Sampler, make_rng, random_sl2z
from .config import SuiteConfig
from .task import Task

EXACT_N = range(2, 9)
EXACT_INSTANCES = 1000
INTERTWINER_N = range(2, 7)
INTERTWINER_DRAWS = 20
MATRIX_BOUND = 5


def _random_element(rng: np.random.Generator, n: int) -> HeisElt:
    t, s, nu = (int(x) for x in rng.integers(0, 2 * n, size=3))
    return HeisElt(t, s, nu, n)


def count_exact_failures(n: int, instances: int, seed: int) -> dict[str, int]:
    """Mismatch counts of the exact identities on random instances."""
    rng = make_rng(seed)
    failures = {"associativity": 0, "inverse": 0, "power_formula": 0, "commutator": 0,
                "composition": 0, "inverse_automorphism": 0, "central": 0, "bracket_preserved": 0}
    identity = HeisElt.identity(n)
    t, s, nu, eps = HeisElt.T(n), HeisElt.S(n), HeisElt.nu(n), HeisElt.eps(n)
    for _ in range(instances):
        x, y, w = (_random_element(rng, n) for _ in range(3))
        failures["associativity"] += (x * y) * w != x * (y * w)
        failures["inverse"] += x * x.inverse() != identity or x.inverse() * x != identity

        a, b, m = (int(v) for v in rng.integers(-n, n + 1, size=3))
        lhs = power(power(s, a) * power(t, b), m)
        failures["power_formula"] += lhs != HeisElt(b * m, a * m, a * b * m * (m + 1), n)
        failures["commutator"] += s * t != t * s * eps

        mm = random_sl2z(rng, MATRIX_BOUND)
        nn = random_sl2z(rng, MATRIX_BOUND)
        psi_m, psi_n = psi_auto(mm, n), psi_auto(nn, n)
        failures["composition"] += psi_n(psi_m(x)) != psi_auto(nn @ mm, n)(x)
        failures["inverse_automorphism"] += psi_auto(mm.inverse(), n)(psi_m(x)) != x
        failures["central"] += psi_m(nu) != nu
        failures["bracket_preserved"] += psi_m(s) * psi_m(t) != psi_m(t) * psi_m(s) * eps
    return failures


def check_exact(n: int, instances: int, seed: int) -> Report:
    failures = count_exact_failures(n, instances, seed)
    report = Report()
    report.add(CheckRecord.measure("heisenberg.exact", "residual", sum(failures.values()),
                                   DEFAULT_TOLERANCES["heisenberg.exact"], n=n,
                                   details={**failures, "instances": instances}))
    return report


def check_intertwiner(n: int, entries: tuple[int, int, int, int]) -> Report:
    m = SL2Z(*entries)
    representation = rep(n).algebra_action
    result = intertwiner(m, representation)
    residual = max(
        result.residual(representation, HeisElt(a, b, 0, n))
        for a in range(n) for b in range(n)
    )
    report = Report()
    report.add(CheckRecord.measure("intertwiner.residual", "residual", residual,
                                   DEFAULT_TOLERANCES["intertwiner.residual"], n=n, matrix=entries))
    report.add(CheckRecord.measure("intertwiner.gap", "ratio", result.gap,
                                   DEFAULT_TOLERANCES["intertwiner.gap"], n=n, matrix=entries))
    return report


def tasks(config: SuiteConfig, sampler: Sampler, matrices: list[SL2Z]) -> list[Task]:
    result = []
    per_n = EXACT_INSTANCES // len(EXACT_N) + 1
    for n in EXACT_N:
        seed = int(sampler.rng.integers(2 ** 31))
        result.append(Task("heisenberg.exact", check_exact, {"n": n, "instances": per_n, "seed": seed}, {"n": n}))
    for n in INTERTWINER_N:
        for _ in range(INTERTWINER_DRAWS):
            entries = sampler.matrix(MATRIX_BOUND).entries
            result.append(Task("intertwiner.residual", check_intertwiner, {"n": n, "entries": entries},
                               {"n": n, "matrix": entries}))
    return result
