"""Models package for hakencx."""

from .complexes import Cell, FVector, RegularCellComplex, SimplicialComplex
from .reports import (
    ChainLine,
    ChainReport,
    CharneyDavisReport,
    FlagReport,
    HakenCellCertificate,
    ReportEntry,
    RunReport,
    ValidationReport,
    Verdict,
)
from .state import VerificationState
from .summaries import CutData, Hierarchy, Interval, IntervalSummary, ManifoldSummary

__all__ = [
    "Cell",
    "FVector",
    "RegularCellComplex",
    "SimplicialComplex",
    "ChainLine",
    "ChainReport",
    "CharneyDavisReport",
    "FlagReport",
    "HakenCellCertificate",
    "ReportEntry",
    "RunReport",
    "ValidationReport",
    "Verdict",
    "VerificationState",
    "CutData",
    "Hierarchy",
    "Interval",
    "IntervalSummary",
    "ManifoldSummary",
]
