"""Nodes package for the hakencx verify-all LangGraph workflow."""

from .check_nodes import (
    load_catalog, check_complexes, check_duality, check_flagness,
    check_haken, check_phi, check_coefficients, check_surgery
)
from .aggregation_nodes import aggregate_results

SUITES = {
    "complexes": check_complexes,
    "duality": check_duality,
    "flagness": check_flagness,
    "haken": check_haken,
    "phi": check_phi,
    "coefficients": check_coefficients,
    "surgery": check_surgery,
}

__all__ = [
    "load_catalog",
    "check_complexes",
    "check_duality",
    "check_flagness",
    "check_haken",
    "check_phi",
    "check_coefficients",
    "check_surgery",
    "aggregate_results",
    "SUITES",
]
