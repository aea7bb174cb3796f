"""
Diamond-supported bump test functions.

A bump of size R on the Right side lives on |x - R| + |t - t0| <= R and on the
Left side on |x + R| + |t - t0| <= R. With rho the left-hand side, its value is
exp(-sharpness / (R^2 - rho^2)) inside and 0 elsewhere.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from qftbell.errors import DomainError
from qftbell.propagators import SpacetimePoint

logger = logging.getLogger(__name__)


class Side(str, Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class DiamondBump:
    side: Side
    R: float
    sharpness: float
    t0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        if not (np.isfinite(self.R) and self.R > 0):
            raise DomainError(f"Diamond size R must be positive, got {self.R}")
        if not (self.sharpness > 0):
            raise DomainError(f"Bump sharpness must be positive, got {self.sharpness}")
        if not np.isfinite(self.t0):
            raise DomainError(f"Time offset must be finite, got {self.t0}")

    @property
    def direction(self) -> float:
        return 1.0 if self.side == Side.RIGHT else -1.0

    @property
    def center(self) -> SpacetimePoint:
        return SpacetimePoint(t=self.t0, x=self.direction * self.R)

    @property
    def jacobian(self) -> float:
        """Jacobian of lightcone_coords, constant over the unit square."""
        return 2.0 * self.R * self.R


def radial_profile(b: DiamondBump, r):
    """The bump as a function of r = rho / R, for r in [0, 1]."""
    r = np.asarray(r, dtype=float)
    inside = r < 1.0
    gap = np.where(inside, 1.0 - r * r, 1.0)
    with np.errstate(over="ignore", under="ignore"):
        value = np.where(inside, np.exp(-b.sharpness / (b.R * b.R * gap)), 0.0)
    return value


def bump_values(b: DiamondBump, t, x) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    rho = np.abs(x - b.direction * b.R) + np.abs(t - b.t0)
    return radial_profile(b, rho / b.R)


def bump_value(b: DiamondBump, p: SpacetimePoint) -> float:
    return float(bump_values(b, p.t, p.x))


def lightcone_map(b: DiamondBump, u, v) -> tuple:
    """
    Map the unit square onto the diamond.

    Right side: x + t = 2Ru, x - t = 2Rv (relative to the time offset). The
    left side is the mirror image x -> -x, so both diamonds meet at the origin
    when u = v = 0.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    t = b.R * (u - v) + b.t0
    x = b.direction * b.R * (u + v)
    return t, x


def lightcone_coords(b: DiamondBump, u: float, v: float) -> SpacetimePoint:
    if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
        raise DomainError(f"Light-cone coordinates must lie in the unit square, got ({u}, {v})")
    t, x = lightcone_map(b, u, v)
    return SpacetimePoint(t=float(t), x=float(x))


def inverse_lightcone_coords(b: DiamondBump, p: SpacetimePoint) -> tuple:
    s = b.direction * p.x
    dt = p.t - b.t0
    return (s + dt) / (2.0 * b.R), (s - dt) / (2.0 * b.R)


@dataclass(frozen=True)
class DiamondQuartet:
    """The four bumps f, f' (right diamond) and g, g' (left diamond)."""

    f: DiamondBump
    fp: DiamondBump
    g: DiamondBump
    gp: DiamondBump

    @classmethod
    def from_parameters(
        cls, a: float, a_p: float, b: float, b_p: float, R: float, R_p: float = None
    ) -> "DiamondQuartet":
        R_p = R if R_p is None else R_p
        return cls(
            f=DiamondBump(Side.RIGHT, R, a),
            fp=DiamondBump(Side.RIGHT, R, a_p),
            g=DiamondBump(Side.LEFT, R, b),
            gp=DiamondBump(Side.LEFT, R_p, b_p),
        )

    def as_dict(self) -> dict:
        return dict(f=self.f, fp=self.fp, g=self.g, gp=self.gp)


@dataclass
class NormalizedTestFunction:
    """
    amplitude * (1 + lambda^2)^(1/2) * bump / sqrt(H(bump, bump)).

    norm_cache holds H(bump, bump). It is written once; later writes with a
    different value are rejected.
    """

    bump: DiamondBump
    amplitude: float
    lambda_factor: float
    norm_cache: float = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def set_norm(self, hadamard_norm: float) -> None:
        if not hadamard_norm > 0:
            raise DomainError(f"Squared Hadamard norm must be positive, got {hadamard_norm}")
        with self._lock:
            if self.norm_cache is not None and self.norm_cache != hadamard_norm:
                raise DomainError("Norm of a normalized test function is already set")
            self.norm_cache = float(hadamard_norm)

    @property
    def scale(self) -> float:
        if self.norm_cache is None:
            raise DomainError("Test function has not been normalized yet")
        return self.amplitude * math.sqrt(1.0 + self.lambda_factor ** 2) / math.sqrt(self.norm_cache)

    @property
    def squared_norm(self) -> float:
        return self.amplitude ** 2 * (1.0 + self.lambda_factor ** 2)
