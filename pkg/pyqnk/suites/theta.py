"""
Theta suite: Jacobi and modular identities, quasi-periodicity and zeros of
theta_{u,v}, and the w-transformation law.
"""

import cmath

from ..errors import QnkError
from ..modcore import INVERSION, SL2Z, TRANSLATION, ModularTriple, act_triple
from ..report import DEFAULT_TOLERANCES, CheckRecord, Report
from ..sampling import Sampler
from ..theta import (
    Characteristic, WIndex, cocycle_ratios, e, f_inversion, jacobi_residual, modular_root,
    theta_uv, w_factor_of_automorphy, w_uv, w_zero,
)
from .config import SuiteConfig
from .task import Task, deferred_error

JACOBI_TAUS = (1j, 2j, 0.3 + 0.9j, -0.4 + 1.2j, 0.1 + 0.6j)
JACOBI_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)
QUASI_PERIODICITY_DRAWS = 50
COCYCLE_N = (3, 4, 5)
ROOT_CASES = (
    ((1, 2, 0, 1), 0.1 + 1.0j),
    ((0, -1, 1, 0), 0.2 + 1.1j),
    ((1, 0, 2, 1), -0.5 + 0.8j),
    ((1, 2, 2, 5), -2.5 + 1.0j),
)
ROOT_POINTS = (0.1 + 0.05j, 0.23 - 0.1j, -0.17 + 0.2j)


def check_jacobi(z: complex, tau: complex) -> Report:
    report = Report()
    report.add(CheckRecord.measure("theta.jacobi", "residual", jacobi_residual(z, tau),
                                   DEFAULT_TOLERANCES["theta.jacobi"], tau=tau, details={"z": [z.real, z.imag]}))
    return report


def check_quasi_periodicity(u: float, v: float, s: int, t: int, z: complex, tau: complex) -> Report:
    ch = Characteristic(u, v)
    lhs = theta_uv(ch, z + s * tau + t, tau)
    rhs = e(-s * (z + v) - 0.5 * s * s * tau + t * u) * theta_uv(ch, z, tau)
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
    at_zero = abs(theta_uv(ch, 0.5 * (tau + 1) - (u * tau + v), tau))
    details = {"u": u, "v": v, "s": s, "t": t, "z": [z.real, z.imag]}
    report = Report()
    report.add(CheckRecord.measure("theta.quasi_periodicity", "residual", residual,
                                   DEFAULT_TOLERANCES["theta.quasi_periodicity"], tau=tau, details=details))
    report.add(CheckRecord.measure("theta.zero", "residual", at_zero,
                                   DEFAULT_TOLERANCES["theta.zero"], tau=tau, details=details))
    return report


def check_modular_root(entries: tuple[int, int, int, int], tau: complex) -> Report:
    m = SL2Z(*entries)
    roots = [modular_root(m, z, tau) for z in ROOT_POINTS]
    first = roots[0]
    value = max(
        abs(abs(first) - 1),
        abs(first ** 8 - 1),
        max(abs(r - first) for r in roots),
    )
    report = Report()
    report.add(CheckRecord.measure(
        "theta.modular_root", "residual", value, DEFAULT_TOLERANCES["theta.modular_root"],
        tau=tau, matrix=entries, details={"root": [first.real, first.imag],
                                          "eighths": cmath.phase(first) / (cmath.pi / 4)},
    ))
    return report


def check_w_cocycle(n: int, entries: tuple[int, int, int, int], z: complex, eta: complex, tau: complex) -> Report:
    m = SL2Z(*entries)
    measured = cocycle_ratios(m, z, eta, tau, n)
    fields = dict(n=n, eta=eta, tau=tau, matrix=entries)
    report = Report()
    report.add(CheckRecord.measure(
        "w.cocycle_independence", "residual", measured.spread, DEFAULT_TOLERANCES["w.cocycle_independence"],
        details={"median": [measured.median.real, measured.median.imag]}, **fields,
    ))
    if m == TRANSLATION:
        report.add(CheckRecord.measure("w.f_translation", "residual", abs(measured.median - 1),
                                       DEFAULT_TOLERANCES["w.f_translation"], **fields))
    if m == INVERSION:
        expected = f_inversion(ModularTriple(z, eta, tau))
        report.add(CheckRecord.measure("w.f_inversion", "residual", abs(measured.median - expected) / abs(expected),
                                       DEFAULT_TOLERANCES["w.f_inversion"], **fields))
    if m in (TRANSLATION, INVERSION):
        report.add(_same_zeros(n, m, eta, tau, fields))
    return report


def _same_zeros(n: int, m: SL2Z, eta: complex, tau: complex, fields: dict) -> CheckRecord:
    worst = 0.0
    for u in range(n):
        for v in range(n):
            idx = WIndex(u, v, n)
            moved = idx.times(m)
            zero = w_zero(moved, n, eta, tau)
            image = act_triple(m, ModularTriple(zero, eta, tau))
            worst = max(
                worst,
                abs(w_uv(moved, n, zero, eta, tau)),
                abs(w_uv(idx, n, image.z, image.eta, image.tau)),
            )
    return CheckRecord.measure("w.same_zeros", "residual", worst, DEFAULT_TOLERANCES["w.same_zeros"], **fields)


def check_w_periodicity(n: int, u: int, v: int, z: complex, eta: complex, tau: complex) -> Report:
    idx = WIndex(u, v, n)
    base = w_uv(idx, n, z, eta, tau)
    worst = 0.0
    for s, t in ((0, 1), (1, 0), (1, 1), (-1, 2)):
        shifted = w_uv(idx, n, z + s * tau + t, eta, tau)
        expected = w_factor_of_automorphy(idx, n, s, t, z, eta, tau) * base
        worst = max(worst, abs(shifted - expected) / max(abs(shifted), abs(expected)))
    report = Report()
    report.add(CheckRecord.measure("w.periodicity", "residual", worst, DEFAULT_TOLERANCES["w.periodicity"],
                                   n=n, eta=eta, tau=tau, details={"u": u, "v": v, "z": [z.real, z.imag]}))
    return report


def tasks(config: SuiteConfig, sampler: Sampler, matrices: list[SL2Z]) -> list[Task]:
    result = []
    for tau in JACOBI_TAUS:
        for x in JACOBI_GRID:
            for y in JACOBI_GRID:
                z = complex(x, y)
                result.append(Task("theta.jacobi", check_jacobi, {"z": z, "tau": tau}, {"tau": tau}))

    for _ in range(QUASI_PERIODICITY_DRAWS):
        tau = sampler.tau()
        kwargs = {
            "u": sampler.uniform(0, 1),
            "v": sampler.uniform(0, 1),
            "s": int(sampler.rng.integers(-2, 3)),
            "t": int(sampler.rng.integers(-2, 3)),
            "z": sampler.complex_box(0.5),
            "tau": tau,
        }
        result.append(Task("theta.quasi_periodicity", check_quasi_periodicity, kwargs, {"tau": tau}))

    for entries, tau in ROOT_CASES:
        result.append(Task("theta.modular_root", check_modular_root, {"entries": entries, "tau": tau},
                           {"tau": tau, "matrix": entries}))

    generators = [INVERSION, TRANSLATION, INVERSION @ TRANSLATION, INVERSION.inverse() @ TRANSLATION]
    for n in COCYCLE_N:
        for m in generators + matrices:
            tau = sampler.tau_for(m)
            try:
                eta = sampler.eta(n, tau, also=[m])
            except QnkError as e:
                result.append(deferred_error("w.cocycle_independence", e,
                                             {"n": n, "tau": tau, "matrix": m.entries}))
                continue
            kwargs = {"n": n, "entries": m.entries, "z": sampler.complex_box(0.3), "eta": eta, "tau": tau}
            result.append(Task("w.cocycle_independence", check_w_cocycle, kwargs,
                               {"n": n, "eta": eta, "tau": tau, "matrix": m.entries}))

    result.append(Task("w.periodicity", check_w_periodicity,
                       {"n": 5, "u": 2, "v": 3, "z": 0.1 + 0.2j, "eta": 0.11 + 0.07j, "tau": 1j}, {"n": 5}))
    for n in COCYCLE_N:
        tau = sampler.tau()
        try:
            eta = sampler.eta(n, tau)
        except QnkError as e:
            result.append(deferred_error("w.periodicity", e, {"n": n, "tau": tau}))
            continue
        kwargs = {"n": n, "u": int(sampler.rng.integers(n)), "v": int(sampler.rng.integers(n)),
                  "z": sampler.complex_box(0.3), "eta": eta, "tau": tau}
        result.append(Task("w.periodicity", check_w_periodicity, kwargs, {"n": n, "eta": eta, "tau": tau}))
    return result
