import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from qftbell.constants import DEFAULT_SEED
from qftbell.errors import ConfigError

logger = logging.getLogger(__name__)


class Scheme(str, Enum):
    QMC = "qmc"
    MC = "mc"


class QuadRule(str, Enum):
    TENSOR = "tensor"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True)
class IntegrationSettings:
    """
    Settings shared by the stochastic smearing and the deterministic quadratures.

    Args:
        scheme (Scheme): Scrambled Sobol (qmc) or plain pseudo-random (mc) nodes.
        points_per_replicate (int): Nodes per replicate (rounded up to a power of two for qmc).
        replicates (int): Independent randomizations; the error bar comes from their scatter.
        seed (int): Root seed; replicate i uses the i-th child of SeedSequence(seed).
        lightcone_guard (float): Relative width of the light-cone guard band.
        workers (int): Threads used for replicates and correlator terms.
        quad_tol (float): Absolute tolerance of the (k, p) quadrature.
        quad_rule (QuadRule): Rule used for the (k, p) quadrature.
        radial_panels_per_radian (float): Gauss panels per radian of phase in the mass-shell transform.
        momentum_tail_tol (float): Relative size of the mass-shell transform at the momentum cutoff.
    """

    scheme: Scheme = Scheme.QMC
    points_per_replicate: int = 2 ** 16
    replicates: int = 8
    seed: int = DEFAULT_SEED
    lightcone_guard: float = 1e-12
    workers: int = 1
    quad_tol: float = 1e-8
    quad_rule: QuadRule = QuadRule.TENSOR
    radial_panels_per_radian: float = 0.5
    momentum_tail_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "quad_rule", QuadRule(self.quad_rule))
        if self.replicates < 2:
            raise ConfigError(f"At least 2 replicates are needed for an error bar, got {self.replicates}")
        if self.points_per_replicate < 1000:
            raise ConfigError(f"points_per_replicate must be at least 1000, got {self.points_per_replicate}")
        if not self.lightcone_guard > 0:
            raise ConfigError("lightcone_guard must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if not self.quad_tol > 0:
            raise ConfigError("quad_tol must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def sample_size(self) -> int:
        """Points actually drawn per replicate."""
        if self.scheme == Scheme.QMC:
            return 2 ** int(math.ceil(math.log2(self.points_per_replicate)))
        return self.points_per_replicate

    def with_points(self, points: int) -> "IntegrationSettings":
        return replace(self, points_per_replicate=points)

    def smearing_key(self) -> dict:
        """The fields that determine a smeared integral, used as cache key."""
        return dict(
            scheme=self.scheme.value,
            points=self.sample_size,
            replicates=self.replicates,
            seed=self.seed,
            guard=self.lightcone_guard,
            panels=self.radial_panels_per_radian,
            tail=self.momentum_tail_tol,
        )


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float = 0.0

    def __post_init__(self):
        if not self.std_error >= 0:
            raise ConfigError(f"std_error must be nonnegative, got {self.std_error}")

    @classmethod
    def from_replicates(cls, values) -> "Estimate":
        values = np.asarray(values, dtype=float)
        return cls(float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(values.size)))

    def agrees_with(self, other: "Estimate", sigmas: float = 3.0) -> bool:
        return abs(self.value - other.value) <= sigmas * (self.std_error + other.std_error)


@dataclass(frozen=True)
class ComplexEstimate:
    value: complex
    std_error: float = 0.0

    @property
    def real(self) -> Estimate:
        return Estimate(float(self.value.real), self.std_error)

    @property
    def imag(self) -> Estimate:
        return Estimate(float(self.value.imag), self.std_error)

    def conjugate(self) -> "ComplexEstimate":
        return ComplexEstimate(self.value.conjugate(), self.std_error)
