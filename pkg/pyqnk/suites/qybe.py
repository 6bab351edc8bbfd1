"""
QYBE suite: Yang-Baxter residuals of R_{n,k}, holomorphy, the commutant
property of T_k, and the theta-basis formula cross-check.
"""

import numpy as np

from ..algebra import numerical_rank, relations, subspace_distance
from ..errors import QnkError
from ..modcore import SL2Z
from ..report import DEFAULT_TOLERANCES, CheckRecord, Report
from ..rmatrix import RParams, commutant_residual, direct_r_matrix, holomorphy_residual, qybe_residual
from ..sampling import Sampler
from .config import SuiteConfig
from .task import Task, deferred_error


def _fields(params: RParams) -> dict:
    return dict(n=params.n, k=params.k, eta=params.eta, tau=params.tau)


def check_qybe(n: int, k: int, eta: complex, tau: complex, u: complex, v: complex) -> Report:
    params = RParams(n, k, eta, tau)
    report = Report()
    report.add(CheckRecord.measure("rmatrix.qybe", "residual", qybe_residual(params, u, v),
                                   DEFAULT_TOLERANCES["rmatrix.qybe"],
                                   details={"u": [u.real, u.imag], "v": [v.real, v.imag]}, **_fields(params)))
    return report


def check_structure(n: int, k: int, eta: complex, tau: complex, z: complex) -> Report:
    params = RParams(n, k, eta, tau)
    report = Report()
    report.add(CheckRecord.measure("rmatrix.holomorphy", "residual", holomorphy_residual(params, z),
                                   DEFAULT_TOLERANCES["rmatrix.holomorphy"], **_fields(params)))
    report.add(CheckRecord.measure("rmatrix.commutant", "residual", commutant_residual(params, z),
                                   DEFAULT_TOLERANCES["rmatrix.commutant"], **_fields(params)))
    direct = direct_r_matrix(params, eta)
    rank = numerical_rank(direct)
    u, _, _ = np.linalg.svd(direct)
    angle = subspace_distance(u[:, :rank], relations(params).basis)
    report.add(CheckRecord.measure("rmatrix.direct_image", "angle", angle,
                                   DEFAULT_TOLERANCES["rmatrix.direct_image"],
                                   details={"direct_rank": rank}, **_fields(params)))
    return report


def tasks(config: SuiteConfig, sampler: Sampler, matrices: list[SL2Z]) -> list[Task]:
    result = []
    for n, k in config.nk_list:
        for _ in range(config.draws):
            tau = sampler.tau()
            try:
                eta = sampler.eta(n, tau)
            except QnkError as e:
                result.append(deferred_error("rmatrix.qybe", e, {"n": n, "k": k, "tau": tau}))
                continue
            kwargs = {"n": n, "k": k, "eta": eta, "tau": tau,
                      "u": sampler.complex_box(0.3), "v": sampler.complex_box(0.3)}
            result.append(Task("rmatrix.qybe", check_qybe, kwargs, {"n": n, "k": k, "eta": eta, "tau": tau}))
        tau = sampler.tau()
        try:
            eta = sampler.eta(n, tau)
        except QnkError as e:
            result.append(deferred_error("rmatrix.holomorphy", e, {"n": n, "k": k, "tau": tau}))
            continue
        kwargs = {"n": n, "k": k, "eta": eta, "tau": tau, "z": sampler.complex_box(0.3)}
        result.append(Task("rmatrix.holomorphy", check_structure, kwargs, {"n": n, "k": k, "eta": eta, "tau": tau}))
    return result
