"""State models for the verify-all workflow."""

import operator
from typing import Annotated, Any, Dict, List, Optional, TypedDict

from models.reports import Verdict


class VerificationState(TypedDict):
    """State model for the verify-all workflow.

    The catalog is loaded once; every suite node appends its verdicts to
    `results`, which the reducer concatenates across parallel branches.
    """
    catalog: Optional[Dict[str, Any]]
    suites: List[str]
    results: Annotated[List[Verdict], operator.add]
    messages: Annotated[List[str], operator.add]
    report: Optional[Any]
