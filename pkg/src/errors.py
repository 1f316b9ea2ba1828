"""Exception hierarchy for hakencx."""

from typing import Sequence

from config_loader import config


class HakencxError(Exception):
    """Base class for every error raised by hakencx."""

    kind = "hakencx_error"

    @classmethod
    def from_config(cls, error_type: str, **fields):
        """Build an error whose message comes from the config templates."""
        return cls(config.get_error_message(error_type, **fields))


class StructuralError(HakencxError):
    """A complex or input record is malformed."""

    kind = "structural_error"


class PreconditionViolation(HakencxError):
    """An operation was called on input outside its precondition."""

    kind = "precondition_violation"


class UnsupportedDimensionError(HakencxError):
    """Dimension outside the range an operation supports."""

    kind = "unsupported_dimension"


class IncompleteSummaryError(HakencxError):
    """A summary lacks data required for an evaluation."""

    kind = "incomplete_summary"


class NotA3SphereError(HakencxError):
    """A simplicial complex fails the 3-sphere surrogate."""

    kind = "not_a_3_sphere"


class UnsupportedCutError(HakencxError):
    """A cutting hypersurface the calculus does not handle."""

    kind = "unsupported_cut"


class UnknownCatalogEntryError(HakencxError):
    """No catalog entry has the requested name."""

    kind = "unknown_entry"


class ParseError(HakencxError):
    """An input file or JSON document could not be decoded."""

    kind = "parse_error"


class InfeasibleSystemError(HakencxError):
    """A linear constraint system has no solution."""

    kind = "infeasible_system"

    def __init__(self, message: str, conflicts: Sequence = ()):
        super().__init__(message)
        self.conflicts = tuple(conflicts)
