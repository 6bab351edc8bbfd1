"""
A unit of suite work: a module-level check function and its arguments.
"""

import logging
import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

from ..errors import QnkError
from ..report import CheckRecord, Report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Task:
    """Picklable call `func(**kwargs)` returning a Report.

    `check_id` and `context` label the error record written when the call
    raises a library error.
    """
    check_id: str
    func: Callable[..., Report]
    kwargs: dict = field(default_factory=dict)
    context: dict = field(default_factory=dict)


def execute(task: Task) -> Report:
    start = time.perf_counter()
    try:
        report = task.func(**task.kwargs)
    except QnkError as e:
        logger.warning("%s failed: %s: %s", task.check_id, type(e).__name__, e)
        report = Report()
        report.add(CheckRecord(
            task.check_id, "error", math.nan, 0.0, False,
            details={"error": f"{type(e).__name__}: {e}"}, **task.context,
        ))
    elapsed = time.perf_counter() - start
    report.records = [r if r.wall_time else replace(r, wall_time=elapsed) for r in report.records]
    return report


def _reraise(error: QnkError) -> Report:
    raise error


def deferred_error(check_id: str, error: QnkError, context: dict) -> Task:
    """A task that records `error` when executed, for parameters that could not be drawn."""
    return Task(check_id, _reraise, {"error": error}, context)
