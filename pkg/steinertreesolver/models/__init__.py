from .instance import Instance
from .solution_tree import SolutionTree
from .representation import Representation
from .engine_state import EngineState, NORMAL, FLAT
from .reweighted_view import ReweightedView
from .solver_config import SolverConfig, parse_variant
from .trace_record import TraceRecord, Extraction
