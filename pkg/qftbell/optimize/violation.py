import logging
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from qftbell.constants import PUBLISHED_TT_OVERLAPS
from qftbell.correlator import BellResult
from qftbell.errors import ConfigError
from qftbell.gram import Overlaps
from qftbell.integration import IntegrationSettings
from qftbell.optimize.objective import (
    Mode,
    ModelContext,
    Objective,
    split_parameters,
    diamond_overlaps,
    evaluate_bell,
    make_objective,
)
from qftbell.optimize.search import SearchResult, maximize
from qftbell.optimize.space import SearchSpace

logger = logging.getLogger(__name__)

MIN_VIOLATION_BUDGET = 100


@dataclass(frozen=True)
class ViolationResult:
    best_params: dict
    result: BellResult
    search: SearchResult
    overlaps: Optional[Overlaps] = None

    @property
    def trace(self) -> tuple:
        return self.search.trace


def maximize_violation(
    mode: Mode,
    space: SearchSpace,
    budget: int,
    seed: int,
    context: ModelContext,
    objective: Objective = Objective.VIOLATION,
    fixed: Mapping[str, float] = None,
    targets: Sequence[float] = PUBLISHED_TT_OVERLAPS,
    starts: int = 8,
    verify_settings: IntegrationSettings = None,
) -> ViolationResult:
    """
    Search for the largest |Bell-CHSH value| (or the closest diamond overlaps).

    Args:
        mode (Mode): tt, overlaps or diamond.
        space (SearchSpace): The parameters searched over.
        budget (int): Objective evaluations, at least 100.
        seed (int): Seed of the starting sample.
        context (ModelContext): Family, settings and cache used during the search.
        objective (Objective): violation, or overlap (diamond mode only).
        fixed (Mapping[str, float], optional): Values of the parameters not searched over.
        targets (Sequence[float]): Target overlaps of the overlap objective.
        starts (int): Number of Nelder-Mead runs.
        verify_settings (IntegrationSettings, optional): Settings for the final
            evaluation at the best point, e.g. more QMC points. Defaults to the search settings.

    Returns:
        ViolationResult: The best parameters, the Bell result there and the search trace.
    """
    if budget < MIN_VIOLATION_BUDGET:
        raise ConfigError(f"Violation search budget must be at least {MIN_VIOLATION_BUDGET}, got {budget}")
    mode = Mode(mode)
    score = make_objective(mode, context, objective, fixed=fixed, targets=targets)
    search = maximize(score, space, budget, seed, starts=starts, workers=context.settings.workers)

    best = {**(fixed or {}), **search.best_params}
    final = context if verify_settings is None else replace(context, settings=verify_settings)
    logger.info("Verifying the best point %s", best)
    result = evaluate_bell(mode, best, final)
    overlaps = None
    if mode == Mode.DIAMOND:
        _, quartet = split_parameters(mode, best)
        overlaps = diamond_overlaps(quartet, final)
    return ViolationResult(best_params=search.best_params, result=result, search=search, overlaps=overlaps)
