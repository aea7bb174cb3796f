"""
The Bell-CHSH value as a function of named parameters, for each model.

tt:       the closed-form Gram model, parameters eta, eta_p, sigma, sigma_p, lam.
overlaps: the overlap-parametrized Gram, same parameters plus fixed overlaps.
diamond:  explicit bumps, parameters a, a_p, b, b_p, R, R_p on top of the
          amplitudes; the Gram matrix comes from the smeared integrals.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from qftbell.constants import PUBLISHED_FITTED_OVERLAPS, PUBLISHED_TT_OVERLAPS, PUBLISHED_TT_PARAMS
from qftbell.correlator import BellResult, bell_chsh, overlap_bell, tt_bell
from qftbell.data import SmearDatabase
from qftbell.errors import ConfigError
from qftbell.gram import Overlaps, overlap_coefficients
from qftbell.integration import IntegrationSettings
from qftbell.kernels import KernelFamily
from qftbell.modular import BellParams
from qftbell.propagators import MassParam
from qftbell.smear.diamond import diamond_gram, normalize_quartet
from qftbell.testfn import DiamondQuartet

logger = logging.getLogger(__name__)

BELL_NAMES = ("eta", "eta_p", "sigma", "sigma_p", "lam")
QUARTET_NAMES = ("a", "a_p", "b", "b_p", "R", "R_p")
DEFAULT_QUARTET = dict(a=2.0, a_p=2.0, b=2.0, b_p=2.0, R=1.0, R_p=None)


class Mode(str, Enum):
    TT = "tt"
    OVERLAPS = "overlaps"
    DIAMOND = "diamond"


class Objective(str, Enum):
    VIOLATION = "violation"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class ModelContext:
    """Everything an evaluation needs besides the parameters being varied."""

    fam: KernelFamily
    settings: IntegrationSettings
    mass: MassParam = MassParam()
    overlaps: Overlaps = Overlaps(*PUBLISHED_FITTED_OVERLAPS)
    method: str = "qmc"
    database: SmearDatabase = None


def split_parameters(mode: Mode, values: Mapping[str, float]) -> tuple:
    values = dict(values)
    allowed = set(BELL_NAMES) | (set(QUARTET_NAMES) if mode == Mode.DIAMOND else set())
    unknown = set(values) - allowed
    if unknown:
        raise ConfigError(f"Unknown parameters for {mode.value} mode: {', '.join(sorted(unknown))}")
    bell = {**PUBLISHED_TT_PARAMS, **{k: v for k, v in values.items() if k in BELL_NAMES}}
    quartet = {**DEFAULT_QUARTET, **{k: v for k, v in values.items() if k in QUARTET_NAMES}}
    return BellParams.from_mapping(bell), quartet


def quartet_from_values(quartet: Mapping[str, float]) -> DiamondQuartet:
    return DiamondQuartet.from_parameters(
        quartet["a"], quartet["a_p"], quartet["b"], quartet["b_p"], quartet["R"], quartet.get("R_p")
    )


def diamond_overlaps(quartet: Mapping[str, float], context: ModelContext) -> Overlaps:
    hat = diamond_gram(
        quartet_from_values(quartet), context.mass, context.settings, method=context.method, database=context.database
    )
    return overlap_coefficients(hat)


def evaluate_bell(mode: Mode, values: Mapping[str, float], context: ModelContext) -> BellResult:
    """
    The Bell-CHSH value at named parameter values.

    Parameters not given fall back to the published TT optimum and unit
    diamonds of sharpness 2, with R_p following R.
    """
    mode = Mode(mode)
    params, quartet = split_parameters(mode, values)
    if mode == Mode.TT:
        return tt_bell(context.fam, params, context.settings)
    if mode == Mode.OVERLAPS:
        return overlap_bell(context.fam, params, context.overlaps, context.settings)
    bumps = quartet_from_values(quartet)
    hat = diamond_gram(bumps, context.mass, context.settings, method=context.method, database=context.database)
    _, gram = normalize_quartet(hat, params, bumps)
    provenance = dict(model="diamond", **params.as_dict(), **quartet)
    return bell_chsh(context.fam, gram, context.settings, provenance=provenance)


def overlap_mismatch(overlaps: Sequence[float], targets: Sequence[float]) -> float:
    return float(np.sum((np.asarray(overlaps) - np.asarray(targets)) ** 2))


def make_objective(
    mode: Mode,
    context: ModelContext,
    objective: Objective = Objective.VIOLATION,
    fixed: Mapping[str, float] = None,
    targets: Sequence[float] = PUBLISHED_TT_OVERLAPS,
) -> Callable[[dict], float]:
    """
    Score function for the search: |value| for "violation", minus the squared
    distance of the diamond overlaps to the targets for "overlap".
    """
    mode, objective = Mode(mode), Objective(objective)
    fixed = dict(fixed or {})
    if objective == Objective.OVERLAP and mode != Mode.DIAMOND:
        raise ConfigError("The overlap objective needs diamond mode")

    def score(values: dict) -> float:
        merged = {**fixed, **values}
        if objective == Objective.OVERLAP:
            _, quartet = split_parameters(mode, merged)
            return -overlap_mismatch(diamond_overlaps(quartet, context), targets)
        return abs(evaluate_bell(mode, merged, context).value)

    return score
