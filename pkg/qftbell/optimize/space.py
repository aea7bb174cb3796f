import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence, Tuple

import numpy as np

from qftbell.errors import ConfigError

# Unit of the signed-log map a = SIGNED_LOG_UNIT * sinh(y).
SIGNED_LOG_UNIT = 1e-3


class Scale(str, Enum):
    LINEAR = "linear"
    LOG = "log"
    SIGNED_LOG = "signed-log"


@dataclass(frozen=True)
class ParameterBounds:
    """
    Range of one search parameter and the coordinate the search moves in.

    "log" searches ln(value) and needs a strictly positive range; "signed-log"
    searches y with value = SIGNED_LOG_UNIT * sinh(y), which covers ranges
    through zero with log-like resolution on both sides.
    """

    name: str
    lower: float
    upper: float
    scale: Scale = Scale.LINEAR

    def __post_init__(self):
        try:
            object.__setattr__(self, "scale", Scale(self.scale))
        except ValueError as e:
            raise ConfigError(f"Unknown scale for {self.name}: {self.scale!r}") from e
        if not (math.isfinite(self.lower) and math.isfinite(self.upper) and self.lower < self.upper):
            raise ConfigError(f"Bounds of {self.name} must satisfy lower < upper, got [{self.lower}, {self.upper}]")
        if self.scale == Scale.LOG and self.lower <= 0:
            raise ConfigError(f"Log-scaled parameter {self.name} needs a positive range")

    @property
    def log_scaled(self) -> bool:
        return self.scale != Scale.LINEAR

    def _forward(self, value):
        if self.scale == Scale.LOG:
            return np.log(value)
        if self.scale == Scale.SIGNED_LOG:
            return np.arcsinh(np.asarray(value) / SIGNED_LOG_UNIT)
        return value

    def _backward(self, y):
        if self.scale == Scale.LOG:
            return np.exp(y)
        if self.scale == Scale.SIGNED_LOG:
            return SIGNED_LOG_UNIT * np.sinh(y)
        return y

    def from_unit(self, z: float) -> float:
        lo, hi = self._forward(self.lower), self._forward(self.upper)
        value = float(self._backward(lo + float(z) * (hi - lo)))
        return min(max(value, self.lower), self.upper)

    def to_unit(self, value: float) -> float:
        lo, hi = self._forward(self.lower), self._forward(self.upper)
        return float((self._forward(value) - lo) / (hi - lo))


@dataclass(frozen=True)
class SearchSpace:
    bounds: Tuple[ParameterBounds, ...]

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        names = self.names
        if not names:
            raise ConfigError("A search space needs at least one parameter")
        if len(set(names)) != len(names):
            raise ConfigError(f"Duplicate search parameters: {names}")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(b.name for b in self.bounds)

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    def from_unit(self, z: Sequence[float]) -> dict:
        return {b.name: b.from_unit(zi) for b, zi in zip(self.bounds, z)}

    def to_unit(self, values: Mapping[str, float]) -> np.ndarray:
        return np.array([b.to_unit(values[b.name]) for b in self.bounds])

    def with_overrides(self, overrides: Mapping[str, Mapping]) -> "SearchSpace":
        """
        Replace bounds by name from a config mapping {name: {lower, upper, scale}}.
        """
        unknown = set(overrides) - set(self.names)
        if unknown:
            raise ConfigError(f"Unknown search parameters: {', '.join(sorted(unknown))}")
        bounds = []
        for b in self.bounds:
            if b.name not in overrides:
                bounds.append(b)
                continue
            entry = dict(overrides[b.name])
            extra = set(entry) - {"lower", "upper", "scale"}
            if extra:
                raise ConfigError(f"Unknown keys in bounds of {b.name}: {', '.join(sorted(extra))}")
            bounds.append(
                ParameterBounds(
                    b.name,
                    float(entry.get("lower", b.lower)),
                    float(entry.get("upper", b.upper)),
                    entry.get("scale", b.scale),
                )
            )
        return SearchSpace(tuple(bounds))


def tt_space() -> SearchSpace:
    """Amplitudes in [-10, 10] on the signed-log scale and lambda inside (0, 1)."""
    amplitudes = [ParameterBounds(name, -10.0, 10.0, Scale.SIGNED_LOG) for name in ("eta", "eta_p", "sigma", "sigma_p")]
    return SearchSpace((*amplitudes, ParameterBounds("lam", 1e-3, 1.0 - 1e-3)))


def diamond_space() -> SearchSpace:
    sharpness = [ParameterBounds(name, 1e-2, 1e2, Scale.LOG) for name in ("a", "a_p", "b", "b_p")]
    sizes = [ParameterBounds(name, 0.1, 10.0, Scale.LOG) for name in ("R", "R_p")]
    return SearchSpace((*sharpness, *sizes))
