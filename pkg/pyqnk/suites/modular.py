"""
Modular suite: the isomorphism Q_{n,k}(M > (eta|tau)) = Q_{n,k}(eta|tau),
the R-matrix equivariance behind it, the congruence-subgroup equality, and
the lattice-isomorphism pathway.
"""

from ..algebra import isom_from_lattice_iso, modular_isom_check, relations, subspace_distance
from ..errors import QnkError
from ..modcore import AMALGAM_X, AMALGAM_Y, INVERSION, SL2Z
from ..report import DEFAULT_TOLERANCES, CheckRecord, Report
from ..rmatrix import RParams, l_equivariance_check
from ..sampling import Sampler
from .config import SuiteConfig
from .task import Task, deferred_error

FIXED_MATRICES = (
    AMALGAM_X,
    AMALGAM_Y,
    AMALGAM_X @ AMALGAM_Y,
    AMALGAM_Y @ AMALGAM_X,
    AMALGAM_X.inverse() @ AMALGAM_Y,
)


def check_modular(n: int, k: int, eta: complex, tau: complex, entries: tuple[int, int, int, int]) -> Report:
    params = RParams(n, k, eta, tau)
    m = SL2Z(*entries)
    report = modular_isom_check(params, m)
    report.extend(l_equivariance_check(params, m, eta))
    return report


def check_congruence(n: int, k: int, eta: complex, tau: complex) -> Report:
    """M = [[1, 0], [n, 1]] fixes the relation space itself."""
    params = RParams(n, k, eta, tau)
    m = SL2Z(1, 0, n, 1)
    angle = subspace_distance(relations(params).basis, relations(params.moved(m)).basis)
    report = Report()
    report.add(CheckRecord.measure("algebra.congruence_equality", "angle", angle,
                                   DEFAULT_TOLERANCES["algebra.congruence_equality"],
                                   n=n, k=k, eta=eta, tau=tau, matrix=m.entries))
    return report


def check_lattice_iso(n: int, k: int, tau1: complex, eta1: complex, tau2: complex, eta2: complex,
                      u: complex) -> Report:
    return isom_from_lattice_iso(tau1, eta1, tau2, eta2, u, n, k)


def lattice_examples(tau: complex, eta: complex) -> list[dict]:
    return [
        {"tau1": tau, "eta1": eta, "tau2": tau + 1, "eta2": eta, "u": 1 + 0j},
        {"tau1": tau, "eta1": eta, "tau2": -1 / tau, "eta2": eta / tau, "u": 1 / tau},
        {"tau1": tau, "eta1": eta, "tau2": tau, "eta2": eta + 1, "u": 1 + 0j},
        {"tau1": tau, "eta1": eta, "tau2": tau, "eta2": eta + tau, "u": 1 + 0j},
    ]


def tasks(config: SuiteConfig, sampler: Sampler, matrices: list[SL2Z]) -> list[Task]:
    result = []
    for n, k in config.nk_list:
        for m in list(FIXED_MATRICES) + matrices:
            tau = sampler.tau_for(m)
            context = {"n": n, "k": k, "tau": tau, "matrix": m.entries}
            try:
                eta = sampler.eta(n, tau, also=[m])
            except QnkError as e:
                result.append(deferred_error("algebra.modular_isom", e, context))
                continue
            result.append(Task("algebra.modular_isom", check_modular,
                               {"n": n, "k": k, "eta": eta, "tau": tau, "entries": m.entries},
                               {**context, "eta": eta}))

        congruence = SL2Z(1, 0, n, 1)
        tau = sampler.tau_for(congruence)
        context = {"n": n, "k": k, "tau": tau, "matrix": congruence.entries}
        try:
            eta = sampler.eta(n, tau, also=[congruence])
            result.append(Task("algebra.congruence_equality", check_congruence,
                               {"n": n, "k": k, "eta": eta, "tau": tau}, {**context, "eta": eta}))
        except QnkError as e:
            result.append(deferred_error("algebra.congruence_equality", e, context))

        tau = sampler.tau()
        try:
            eta = sampler.eta(n, tau, also=[INVERSION])
        except QnkError as e:
            result.append(deferred_error("algebra.lattice_iso", e, {"n": n, "k": k, "tau": tau}))
            continue
        for example in lattice_examples(tau, eta):
            result.append(Task("algebra.lattice_iso", check_lattice_iso, {"n": n, "k": k, **example},
                               {"n": n, "k": k, "eta": eta, "tau": tau}))
    return result
