"""UI package for hakencx reports."""

from .report_view import ReportView

__all__ = ["ReportView"]
