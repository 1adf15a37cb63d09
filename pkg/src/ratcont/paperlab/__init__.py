"""Worked examples encoded as exact, machine-checked scenarios."""

from ratcont.paperlab.charts import ChartMap, blowup_chart_substitute
from ratcont.paperlab.scenarios import CheckResult, Report, list_scenarios, run_scenario

__all__ = ["ChartMap", "CheckResult", "Report", "blowup_chart_substitute", "list_scenarios", "run_scenario"]
