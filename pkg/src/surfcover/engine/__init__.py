"""Engine: scenario runners, report assembly and single-curve tools."""

from surfcover.engine.orchestrator import RUNNERS, run_scenario
from surfcover.engine.pgq0 import run_pgq0
from surfcover.engine.pgq1 import run_pgq1
from surfcover.engine.pgq2 import run_pgq2
from surfcover.engine.report import ReportBuilder
from surfcover.engine.tools import intersect_curves, irreducible_curve, linsys_summary, resolve_curve

__all__ = [
    "RUNNERS",
    "run_scenario",
    "run_pgq0",
    "run_pgq1",
    "run_pgq2",
    "ReportBuilder",
    "resolve_curve",
    "irreducible_curve",
    "intersect_curves",
    "linsys_summary",
]
