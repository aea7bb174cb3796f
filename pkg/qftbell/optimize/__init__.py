from qftbell.optimize.objective import Mode, ModelContext, Objective, evaluate_bell, make_objective
from qftbell.optimize.scan import ScanAxis, ScanGrid, figure_scan, scan_grid
from qftbell.optimize.search import SearchResult, maximize
from qftbell.optimize.space import ParameterBounds, Scale, SearchSpace, diamond_space, tt_space
from qftbell.optimize.violation import ViolationResult, maximize_violation
