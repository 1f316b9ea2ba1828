"""verify-all workflow for hakencx."""

import logging
from typing import Iterable, Optional

from dotenv import load_dotenv
from langgraph.graph import StateGraph, START, END
from langgraph.checkpoint.memory import MemorySaver

# Load environment variables before anything reads the configuration
load_dotenv()

from models.reports import RunReport
from models.state import VerificationState
from nodes import SUITES, load_catalog, aggregate_results
from config_loader import config

logger = logging.getLogger(__name__)


class HakencxApp:
    """Runs the verification suites over the catalog as a LangGraph workflow."""

    def __init__(self, suites: Optional[Iterable[str]] = None):
        """Initialize the application.

        Args:
            suites: Names of the suites to run; all of them by default
        """
        self.suites = sorted(SUITES) if suites is None else sorted(set(suites))
        unknown = [name for name in self.suites if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}; choose from {', '.join(sorted(SUITES))}")

        self.app_config = config.get_app_config()
        self.langgraph_config = self.app_config.get("langgraph", {})
        self.checkpointer_type = self.langgraph_config.get("checkpointer", "memory")
        self.thread_id = self.langgraph_config.get("thread_id", "verify-all")

        self.workflow = self._build_workflow()

        if self.checkpointer_type == "memory":
            self.graph = self.workflow.compile(checkpointer=MemorySaver())
        else:
            self.graph = self.workflow.compile()

        self.execution_config = {"configurable": {"thread_id": self.thread_id}}

    def _build_workflow(self) -> StateGraph:
        """Build the LangGraph workflow.

        load_catalog fans out to every suite; the suites run in parallel and
        join in aggregate_results.

        Returns:
            StateGraph: Configured workflow
        """
        workflow = StateGraph(VerificationState)

        workflow.add_node("load_catalog", load_catalog)
        for name in self.suites:
            workflow.add_node(f"check_{name}", SUITES[name])
        workflow.add_node("aggregate_results", aggregate_results)

        workflow.add_edge(START, "load_catalog")
        for name in self.suites:
            workflow.add_edge("load_catalog", f"check_{name}")
            workflow.add_edge(f"check_{name}", "aggregate_results")
        workflow.add_edge("aggregate_results", END)

        return workflow

    def run(self) -> RunReport:
        """Run every selected suite and return the combined report."""
        logger.info("verify-all: running suites %s", ", ".join(self.suites))
        result = self.graph.invoke(
            {"catalog": None, "suites": self.suites, "results": [], "messages": [], "report": None},
            config=self.execution_config,
        )
        for message in result.get("messages", []):
            logger.info(message)
        return result["report"]


def main():
    """Main entry point."""
    from cli import main as cli_main

    raise SystemExit(cli_main(["verify-all"]))


if __name__ == "__main__":
    main()
