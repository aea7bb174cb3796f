"""
Multi-start bounded Nelder-Mead over a SearchSpace.

The search runs in unit-cube coordinates. A scrambled Sobol sample of the
cube is evaluated first; the best points then seed independent Nelder-Mead
runs that share the rest of the budget.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy import optimize
from scipy.stats import qmc

from qftbell.errors import ConfigError, NumericalFailure
from qftbell.optimize.space import SearchSpace

logger = logging.getLogger(__name__)

MIN_BUDGET = 10
SAMPLE_SHARE = 0.2
MAX_SAMPLE = 256


@dataclass(frozen=True)
class SearchResult:
    best_params: dict
    best_value: float
    trace: Tuple[Tuple[dict, float], ...] = field(repr=False)
    best_so_far: np.ndarray = field(repr=False, compare=False)

    @property
    def evaluations(self) -> int:
        return len(self.trace)


class _Recorder:
    """Budgeted objective in unit coordinates that records every evaluation."""

    def __init__(self, objective: Callable[[dict], float], space: SearchSpace, limit: int):
        self.objective = objective
        self.space = space
        self.limit = limit
        self.trace: List[Tuple[dict, float]] = []

    def __call__(self, z) -> float:
        params = self.space.from_unit(np.clip(z, 0.0, 1.0))
        if len(self.trace) >= self.limit:
            return math.inf
        try:
            value = float(self.objective(params))
        except NumericalFailure as e:
            logger.debug("Objective failed at %s: %s", params, e)
            value = math.nan
        self.trace.append((params, value))
        # Nelder-Mead minimizes; non-finite points rank last.
        return -value if math.isfinite(value) else math.inf


def _nelder_mead(recorder: _Recorder, x0: np.ndarray) -> _Recorder:
    d = x0.size
    optimize.minimize(
        recorder,
        x0,
        method="Nelder-Mead",
        bounds=[(0.0, 1.0)] * d,
        options=dict(maxfev=recorder.limit, xatol=1e-10, fatol=1e-14, adaptive=d > 4),
    )
    return recorder


def maximize(
    objective: Callable[[dict], float],
    space: SearchSpace,
    budget: int,
    seed: int,
    starts: int = 8,
    workers: int = 1,
) -> SearchResult:
    """
    Maximize an objective over a search space.

    Args:
        objective (Callable[[dict], float]): Maps parameter values by name to a score.
        space (SearchSpace): Bounds and scales of the parameters.
        budget (int): Total number of objective evaluations.
        seed (int): Seed of the Sobol sample; equal seeds give equal results.
        starts (int): Number of Nelder-Mead runs.
        workers (int): Threads running the Nelder-Mead instances.

    Returns:
        SearchResult: The best point, its value and the evaluation trace in a
            fixed order (sample first, then each start in turn).
    """
    if budget < MIN_BUDGET:
        raise ConfigError(f"Search budget must be at least {MIN_BUDGET}, got {budget}")
    if starts < 1:
        raise ConfigError(f"At least one start is needed, got {starts}")

    sample_size = min(MAX_SAMPLE, max(starts, int(SAMPLE_SHARE * budget)))
    sampler = qmc.Sobol(d=space.dimension, scramble=True, seed=np.random.default_rng(seed))
    candidates = sampler.random_base2(m=int(math.ceil(math.log2(sample_size))))[:sample_size]

    logger.info("Starting multi-start search: %d sampled points, %d starts, budget %d", sample_size, starts, budget)
    sample = _Recorder(objective, space, sample_size)
    scores = np.array([sample(z) for z in candidates])
    order = np.argsort(scores, kind="stable")[: min(starts, sample_size)]

    remaining = budget - len(sample.trace)
    share = remaining // len(order)
    recorders = [_Recorder(objective, space, share) for _ in order]
    if share > 0:
        jobs = list(zip(recorders, (candidates[i] for i in order)))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(lambda job: _nelder_mead(*job), jobs))
        else:
            for job in jobs:
                _nelder_mead(*job)

    trace = list(sample.trace)
    for recorder in recorders:
        trace.extend(recorder.trace)
    values = np.array([v for _, v in trace])
    finite = np.where(np.isfinite(values), values, -np.inf)
    if not np.any(np.isfinite(values)):
        raise NumericalFailure(f"Search budget of {budget} exhausted without a finite evaluation")
    best = int(np.argmax(finite))
    logger.info("Search finished after %d evaluations, best %.6g", len(trace), finite[best])
    return SearchResult(
        best_params=dict(trace[best][0]),
        best_value=float(finite[best]),
        trace=tuple(trace),
        best_so_far=np.maximum.accumulate(finite),
    )
