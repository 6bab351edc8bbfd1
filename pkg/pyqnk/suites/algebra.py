"""
Algebra suite: rank of the relations, Hilbert dimensions up to degree 3,
H~_n-invariance, and independence of the representative of eta mod the lattice.
"""

from ..algebra import graded_dims, heisenberg_invariance, relations, subspace_distance
from ..errors import QnkError
from ..modcore import SL2Z
from ..report import DEFAULT_TOLERANCES, CheckRecord, Report
from ..rmatrix import RParams
from ..sampling import Sampler
from .config import SuiteConfig
from .task import Task, deferred_error

ETA_DRAWS = 5


def check_relations(n: int, k: int, eta: complex, tau: complex) -> Report:
    params = RParams(n, k, eta, tau)
    rel = relations(params)
    dims = graded_dims(rel, 3)
    expected = dims.expected()
    fields = dict(n=n, k=k, eta=eta, tau=tau)
    report = Report()
    report.add(CheckRecord.measure("algebra.rank", "rank", abs(rel.rank - n * (n - 1) // 2),
                                   DEFAULT_TOLERANCES["algebra.rank"], details={"rank": rel.rank}, **fields))
    report.add(CheckRecord.measure("algebra.hilbert", "rank", sum(a != b for a, b in zip(dims.dims, expected)),
                                   DEFAULT_TOLERANCES["algebra.hilbert"],
                                   details={"dims": list(dims.dims), "expected": list(expected)}, **fields))
    report.add(CheckRecord.measure("algebra.invariance", "angle", heisenberg_invariance(rel),
                                   DEFAULT_TOLERANCES["algebra.invariance"], **fields))
    for name, shift in (("1", 1), ("tau", tau)):
        shifted = relations(params.with_eta(eta + shift))
        report.add(CheckRecord.measure("algebra.eta_shift", "angle", subspace_distance(rel.basis, shifted.basis),
                                       DEFAULT_TOLERANCES["algebra.eta_shift"], details={"shift": name}, **fields))
    return report


def tasks(config: SuiteConfig, sampler: Sampler, matrices: list[SL2Z]) -> list[Task]:
    result = []
    for n, k in config.nk_list:
        for _ in range(ETA_DRAWS):
            tau = sampler.tau()
            try:
                eta = sampler.eta(n, tau)
            except QnkError as e:
                result.append(deferred_error("algebra.hilbert", e, {"n": n, "k": k, "tau": tau}))
                continue
            result.append(Task("algebra.hilbert", check_relations, {"n": n, "k": k, "eta": eta, "tau": tau},
                               {"n": n, "k": k, "eta": eta, "tau": tau}))
    return result
