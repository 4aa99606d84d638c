"""Verification suite - runs every acceptance criterion and writes verify.json."""

import logging
import time
from collections.abc import Iterable
from pathlib import Path

from adaregret.experiments.base import BaseCriterion, SuiteContext
from adaregret.experiments.criteria import CRITERIA
from adaregret.schemas import CriterionResult, Fault, SuiteReport, SuiteScale
from adaregret.storage import ArtifactStore

logger = logging.getLogger(__name__)


async def _evaluate(criterion: BaseCriterion, context: SuiteContext) -> CriterionResult:
    started = time.perf_counter()
    try:
        result = await criterion.evaluate(context)
    except Exception as e:
        logger.exception("Criterion %s raised", criterion.name)
        result = CriterionResult(
            name=criterion.name,
            description=criterion.description,
            passed=False,
            error=f"{type(e).__name__}: {e}",
        )
    elapsed = time.perf_counter() - started
    result.metrics["seconds"] = elapsed
    if result.passed:
        logger.info("PASS %s (%.1fs)", result.name, elapsed)
    else:
        logger.warning("FAIL %s: %s", result.name, result.error or result.detail)
    return result


async def verify_suite(
    scale: SuiteScale = SuiteScale.SMALL,
    faults: Iterable[Fault] = (),
    out: str | Path | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Run the criteria one after another; with ``out`` the report is also stored as JSON."""
    faults = sorted(set(faults), key=lambda f: f.value)
    context = SuiteContext(scale=scale, faults=frozenset(faults), seed=seed)
    if faults:
        logger.warning("Injected faults: %s", ", ".join(f.value for f in faults))
    results = [await _evaluate(criterion(), context) for criterion in CRITERIA]
    report = SuiteReport(
        scale=scale,
        faults=faults,
        passed=all(r.passed for r in results),
        criteria=results,
    )
    if out is not None:
        await ArtifactStore(out).write_json("verify.json", report)
    logger.info("%d of %d criteria passed", sum(r.passed for r in results), len(results))
    return report
