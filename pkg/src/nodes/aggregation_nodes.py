"""Aggregation node for the verify-all workflow."""

import logging
from typing import Dict

from models.reports import RunReport
from models.state import VerificationState

logger = logging.getLogger(__name__)


def aggregate_results(state: VerificationState) -> Dict:
    """Assemble the suite verdicts into one RunReport.

    Suites finish in any order; the report lists verdicts sorted by name so
    that repeated runs produce identical output.

    Args:
        state: Current workflow state

    Returns:
        Dict: Updated state with report
    """
    results = sorted(state.get("results") or [], key=lambda verdict: verdict.name)
    names = (state.get("catalog") or {}).get("names") or []
    report = RunReport(command="verify-all", inputs={"catalog": ",".join(names)}, results=results)
    failed = [verdict.name for verdict in results if not verdict.passed]
    if failed:
        logger.warning("verify-all: %d of %d verdicts failed: %s", len(failed), len(results), ", ".join(failed))
    else:
        logger.info("verify-all: all %d verdicts passed", len(results))
    return {"report": report}
