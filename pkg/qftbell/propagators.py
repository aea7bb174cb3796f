"""
Pointwise Pauli-Jordan and Hadamard distributions of the free scalar field in
1+1 dimensions.

With the Wightman function W(x) = <0|phi(x) phi(0)|0> these are
    hadamard = 2 Re W,    pauli_jordan = 2 Im W,
so that <f|g> = H(f,g) + (i/2) Delta_PJ(f,g) once smeared.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qftbell.constants import DEFAULT_MASS, EULER_GAMMA
from qftbell.errors import DomainError, LightConeSingularity
from qftbell.specfun import bessel_j0, bessel_k0, bessel_y0

logger = logging.getLogger(__name__)

DEFAULT_GUARD = 1e-12
LAMBDA_FLOOR = 1e-300


@dataclass(frozen=True)
class SpacetimePoint:
    t: float
    x: float

    def __post_init__(self):
        if not (np.isfinite(self.t) and np.isfinite(self.x)):
            raise DomainError(f"Spacetime point components must be finite, got ({self.t}, {self.x})")


@dataclass(frozen=True)
class MassParam:
    m: float = DEFAULT_MASS

    def __post_init__(self):
        if not (np.isfinite(self.m) and self.m > 0):
            raise DomainError(f"Mass must be positive, got {self.m}")


def interval(p: SpacetimePoint) -> float:
    return p.t * p.t - p.x * p.x


def boost(p: SpacetimePoint, rapidity: float) -> SpacetimePoint:
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    return SpacetimePoint(t=p.t * c + p.x * s, x=p.x * c + p.t * s)


def pauli_jordan(t, x, m: float, theta_zero: float = 1.0) -> np.ndarray:
    """
    -1/2 sign(t) theta(lambda) J0(m sqrt(lambda)), elementwise.

    theta_zero is the value of theta on the cone itself.
    """
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    lam = t * t - x * x
    theta = np.where(lam > 0, 1.0, np.where(lam == 0, theta_zero, 0.0))
    root = np.sqrt(np.maximum(lam, 0.0))
    return -0.5 * np.sign(t) * theta * bessel_j0(m * root)


def hadamard(t, x, m: float, guard: float = DEFAULT_GUARD) -> np.ndarray:
    """
    -1/2 theta(lambda) Y0(m sqrt(lambda)) + 1/pi theta(-lambda) K0(m sqrt(-lambda)), elementwise.

    Within the guard band |lambda| < guard * max(1, t^2 + x^2) both branches are
    replaced by their common leading term -(ln(m sqrt|lambda| / 2) + gamma) / pi,
    which keeps the integrable logarithm sampled without overflow.
    """
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    lam = t * t - x * x
    band = guard * np.maximum(1.0, t * t + x * x)
    near = np.abs(lam) < band
    root = np.sqrt(np.maximum(np.abs(lam), LAMBDA_FLOOR))
    z = m * root

    value = np.empty(np.broadcast(t, x).shape)
    timelike = (lam > 0) & ~near
    spacelike = (lam < 0) & ~near
    value[timelike] = -0.5 * bessel_y0(z[timelike])
    value[spacelike] = bessel_k0(z[spacelike]) / np.pi
    value[near] = -(np.log(0.5 * z[near]) + EULER_GAMMA) / np.pi
    if np.any(near):
        logger.debug("%d samples inside the light-cone guard band", int(np.count_nonzero(near)))
    return value


def pauli_jordan_point(p: SpacetimePoint, m: MassParam, theta_zero: Optional[float] = 1.0) -> float:
    """
    Pauli-Jordan function at a point.

    Args:
        p (SpacetimePoint): The separation.
        m (MassParam): The mass.
        theta_zero (float, optional): theta(0) on the cone. None raises instead.

    Returns:
        float: The value.
    """
    if interval(p) == 0 and p.t != 0:
        if theta_zero is None:
            raise LightConeSingularity(f"Pauli-Jordan function evaluated on the light cone at {p}")
        logger.debug("Pauli-Jordan function on the light cone, using theta(0) = %s", theta_zero)
    return float(pauli_jordan(p.t, p.x, m.m, theta_zero=1.0 if theta_zero is None else theta_zero))


def hadamard_point(p: SpacetimePoint, m: MassParam) -> float:
    if interval(p) == 0:
        raise LightConeSingularity(
            f"Hadamard function diverges on the light cone at {p}; integrate through hadamard()"
        )
    return float(hadamard(p.t, p.x, m.m))
