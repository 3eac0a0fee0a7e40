"""Repositories package: STP instances, solution files and trace CSVs."""
from .stp_repository import StpRepository, parse_stp, serialize_stp
from .solution_repository import SolutionRepository, format_solution, parse_solution
from .trace_repository import TraceRepository, trace_frame, format_trace
