"""Report records produced by the verification services."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Tuple

from errors import PreconditionViolation
from models.complexes import FVector


@dataclass(frozen=True)
class ReportEntry:
    """One checked subject (a facet set, a pair, a triple...) and its outcome."""

    subject: Tuple[Hashable, ...]
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a combinatorial validation.

    `checked` counts every subject examined, including those that pass
    implicitly and are not listed in `entries`.
    """

    name: str
    entries: Tuple[ReportEntry, ...] = ()
    checked: int = 0

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> Tuple[ReportEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.passed)


@dataclass(frozen=True)
class HakenCellCertificate:
    """Combinatorial certificate that a boundary complex bounds a Haken n-cell.

    This certifies the combinatorial consequences of usefulness only; it is
    not a topological proof.
    """

    n: int
    verdict: bool
    trail: Tuple[Tuple[Hashable, bool], ...] = ()
    dual_flag: bool = False
    reasons: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict and not all(passed for _, passed in self.trail):
            raise PreconditionViolation("certificate passes with a failing trail entry")
        if self.verdict and self.n in (3, 4) and not self.dual_flag:
            raise PreconditionViolation.from_config("dual_flag_violation", n=self.n)


@dataclass(frozen=True)
class FlagReport:
    """Flag verdict with the minimal non-faces that decided it."""

    verdict: bool
    minimal_non_faces: Tuple[Tuple[int, ...], ...]
    empty_simplices_by_dim: Dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class CharneyDavisReport:
    """Charney-Davis quantity of a simplicial 3-sphere and the related inequalities."""

    kappa: Fraction
    f_star: FVector
    inequality_5f0: bool
    dual_inequality: bool
    lower_bound_inequality: bool = True
    flag: Optional[bool] = None

    @property
    def equivalence_holds(self) -> bool:
        """kappa >= 0 exactly when f1* >= 5 f0* - 16."""
        return (self.kappa >= 0) == self.inequality_5f0


@dataclass(frozen=True)
class ChainLine:
    """One evaluated relation of an induction chain."""

    stage: str
    relation: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class ChainReport:
    """All evaluated relations of a hierarchy."""

    lines: Tuple[ChainLine, ...]

    @property
    def all_hold(self) -> bool:
        return all(line.holds for line in self.lines)


@dataclass(frozen=True)
class Verdict:
    """A named pass/fail result with free-form details."""

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class RunReport:
    """Result of one CLI command or verify-all run."""

    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    results: List[Verdict] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(verdict.passed for verdict in self.results)
