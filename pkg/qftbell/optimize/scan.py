import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Tuple

import numpy as np

from qftbell.constants import CLASSICAL_BOUND, FIGURE_LAMBDA, FIGURE_SLICES
from qftbell.errors import ConfigError
from qftbell.kernels import KernelFamily
from qftbell.optimize.objective import Mode, ModelContext, evaluate_bell

logger = logging.getLogger(__name__)

# Ranges of the (eta, eta_p) surfaces used for the figure slices.
FIGURE_ETA_RANGE = (0.0, 0.5)
FIGURE_ETA_P_RANGE = (0.0, 10.0)


@dataclass(frozen=True)
class ScanAxis:
    name: str
    values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ConfigError(f"Scan axis {self.name} has no values")

    @classmethod
    def linspace(cls, name: str, lower: float, upper: float, points: int) -> "ScanAxis":
        if points < 1:
            raise ConfigError(f"Scan axis {name} needs at least one point, got {points}")
        return cls(name, tuple(np.linspace(lower, upper, int(points))))


@dataclass(frozen=True)
class ScanGrid:
    axis1: ScanAxis
    axis2: ScanAxis
    fixed: dict
    values: np.ndarray = field(compare=False)
    errors: np.ndarray = field(compare=False)

    def __post_init__(self):
        shape = (len(self.axis1.values), len(self.axis2.values))
        if np.shape(self.values) != shape or np.shape(self.errors) != shape:
            raise ConfigError(f"Scan grid of shape {np.shape(self.values)} does not match axes {shape}")

    @property
    def exceeds(self) -> np.ndarray:
        """Cells where the classical bound 2 is violated."""
        return np.abs(self.values) > CLASSICAL_BOUND

    def header(self) -> list:
        return [self.axis1.name, self.axis2.name, "value", "error", "exceeds_2"]

    def rows(self) -> list:
        exceeds = self.exceeds
        return [
            [x, y, float(self.values[i, j]), float(self.errors[i, j]), bool(exceeds[i, j])]
            for i, x in enumerate(self.axis1.values)
            for j, y in enumerate(self.axis2.values)
        ]


def scan_grid(
    mode: Mode,
    axis1: ScanAxis,
    axis2: ScanAxis,
    fixed: Mapping[str, float],
    context: ModelContext,
) -> ScanGrid:
    """
    Evaluate the Bell-CHSH value on every cell of a 2D parameter grid.

    Args:
        mode (Mode): tt, overlaps or diamond.
        axis1 (ScanAxis): First axis (rows).
        axis2 (ScanAxis): Second axis (columns).
        fixed (Mapping[str, float]): Values of the other parameters.
        context (ModelContext): Family, settings and cache.

    Returns:
        ScanGrid: Values, errors and the exceedance mask.
    """
    if axis1.name == axis2.name:
        raise ConfigError(f"Scan axes must differ, got {axis1.name} twice")
    fixed = dict(fixed)
    values = np.empty((len(axis1.values), len(axis2.values)))
    errors = np.empty_like(values)
    logger.info("Scanning %s over %d x %d cells", Mode(mode).value, *values.shape)
    for i, x in enumerate(axis1.values):
        for j, y in enumerate(axis2.values):
            result = evaluate_bell(mode, {**fixed, axis1.name: x, axis2.name: y}, context)
            values[i, j] = result.value
            errors[i, j] = result.num_error
    return ScanGrid(axis1, axis2, fixed, values, errors)


def figure_scan(name: str, context: ModelContext, points: int = 50, lam: float = FIGURE_LAMBDA) -> ScanGrid:
    """
    One of the published (eta, eta_p) surfaces, evaluated with the
    overlap-parametrized correlator at context.overlaps.
    """
    if name not in FIGURE_SLICES:
        raise ConfigError(f"Unknown figure {name!r}. Available figures are: {', '.join(FIGURE_SLICES)}")
    family, sigma, sigma_p = FIGURE_SLICES[name]
    context = ModelContext(
        fam=KernelFamily.from_name(family, context.fam.atom_weight),
        settings=context.settings,
        mass=context.mass,
        overlaps=context.overlaps,
    )
    return scan_grid(
        Mode.OVERLAPS,
        ScanAxis.linspace("eta", *FIGURE_ETA_RANGE, points),
        ScanAxis.linspace("eta_p", *FIGURE_ETA_P_RANGE, points),
        dict(sigma=sigma, sigma_p=sigma_p, lam=lam),
        context,
    )


def axes_from_config(entries: Sequence[Mapping]) -> Tuple[ScanAxis, ScanAxis]:
    """Two axes from config entries {name, lower, upper, points}."""
    if len(entries) != 2:
        raise ConfigError(f"A scan needs exactly two axes, got {len(entries)}")
    axes = []
    for entry in entries:
        entry = dict(entry)
        extra = set(entry) - {"name", "lower", "upper", "points"}
        if extra:
            raise ConfigError(f"Unknown keys in scan axis: {', '.join(sorted(extra))}")
        try:
            axes.append(ScanAxis.linspace(entry["name"], float(entry["lower"]), float(entry["upper"]), int(entry["points"])))
        except KeyError as e:
            raise ConfigError(f"Scan axis is missing {e}") from e
    return tuple(axes)
