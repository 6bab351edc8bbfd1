"""
Build the task list for a SuiteConfig, execute it serially or on a process
pool, and assemble one deterministic Report.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from ..modcore import SL2Z
from ..report import CheckRecord, Report, passes
from ..sampling import Sampler
from . import algebra, heisenberg, modular, qybe, theta
from .config import SuiteConfig
from .task import Task, execute

logger = logging.getLogger(__name__)

SUITE_MODULES = {
    "theta": theta,
    "heisenberg": heisenberg,
    "qybe": qybe,
    "modular": modular,
    "algebra": algebra,
}


def config_matrices(config: SuiteConfig, sampler: Sampler) -> list[SL2Z]:
    if config.matrices.explicit:
        return list(config.matrices.explicit)
    return [sampler.matrix(config.matrices.bound) for _ in range(config.matrices.count)]


def build_tasks(config: SuiteConfig) -> list[Task]:
    sampler = Sampler(config.seed, config.tau_list, config.eta_list)
    matrices = config_matrices(config, sampler)
    result = []
    for name in config.suites:
        suite_tasks = SUITE_MODULES[name].tasks(config, sampler, matrices)
        logger.debug("suite %s: %d tasks", name, len(suite_tasks))
        result.extend(suite_tasks)
    return result


def apply_tolerances(record: CheckRecord, config: SuiteConfig) -> CheckRecord:
    if record.check_id not in config.tolerances or record.metric == "error":
        return record
    tol = config.tolerances[record.check_id]
    return replace(record, tol=tol, passed=passes(record.check_id, record.value, tol))


def run_suite(config: SuiteConfig) -> Report:
    tasks = build_tasks(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            reports = list(executor.map(execute, tasks))
    else:
        reports = [execute(task) for task in tasks]

    merged = Report(seed=config.seed, config=config.echo())
    for report in reports:
        for record in report.records:
            merged.add(apply_tolerances(record, config))
    return merged.sorted()
