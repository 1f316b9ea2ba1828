"""Text and JSON rendering of run reports."""

import json
from typing import Any, List

from config_loader import config
from models.reports import RunReport
from services.serialization import dumps, to_jsonable


class ReportView:
    """Renders a RunReport as an aligned text table or as JSON."""

    def __init__(self, as_json: bool = False):
        """Initialize the view.

        Args:
            as_json: Render JSON instead of the text table
        """
        self.as_json = as_json
        self.output_config = config.get_output_config()
        self.detail_width = int(self.output_config.get("detail_width", 100))

    def _details(self, details: Any) -> str:
        record = to_jsonable(details)
        if not isinstance(record, dict):
            return json.dumps(record, sort_keys=True)
        parts = []
        for key, value in record.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            parts.append(f"{key}={text}")
        line = " ".join(parts)
        if len(line) > self.detail_width:
            line = line[: self.detail_width - 3] + "..."
        return line

    def render_text(self, report: RunReport) -> str:
        rows: List[tuple] = [
            (verdict.name, "PASS" if verdict.passed else "FAIL", self._details(verdict.details))
            for verdict in report.results
        ]
        name_width = max([len("CHECK")] + [len(row[0]) for row in rows])
        lines = [f"{'CHECK'.ljust(name_width)}  RESULT  DETAILS"]
        lines += [f"{name.ljust(name_width)}  {status.ljust(6)}  {details}".rstrip() for name, status, details in rows]
        passed = sum(verdict.passed for verdict in report.results)
        lines.append(f"{report.command}: {passed}/{len(report.results)} passed, all_pass={str(report.all_pass).lower()}")
        return "\n".join(lines)

    def render(self, report: RunReport) -> str:
        """Render the report in the configured format.

        Args:
            report: Report to render

        Returns:
            str: Text table or JSON document
        """
        if self.as_json:
            return dumps(report)
        return self.render_text(report)
