"""
Kernel families for the bounded Hermitian observables
    A = c0 + (1 - |c0|) * int dk sigma_hat(k) exp(i k phi(f)),
with sigma(x) = int dk exp(ikx) sigma_hat(k).

The printed Gaussian pair (exp(-x^2) with (1/sqrt(pi)) exp(-k^2)) is not a
Fourier pair: the inverse transform of (1/sqrt(pi)) exp(-k^2) is exp(-x^2/4).
Both readings are available through GaussMode.
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from qftbell.errors import ConfigError, DomainError, NumericalFailure
from qftbell.specfun import AccuracyReport, sech

logger = logging.getLogger(__name__)


class FamilyId(str, Enum):
    SECH = "sech"
    LORENTZ = "lorentz"
    GAUSS = "gauss"


class GaussMode(str, Enum):
    PRINTED_KERNEL = "printed"
    EXACT_PAIR = "exact"


@dataclass(frozen=True)
class KernelFamily:
    family_id: FamilyId
    gauss_mode: GaussMode = GaussMode.PRINTED_KERNEL
    atom_weight: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family_id", FamilyId(self.family_id))
        object.__setattr__(self, "gauss_mode", GaussMode(self.gauss_mode))
        if not -1.0 <= self.atom_weight <= 1.0:
            raise DomainError(f"atom_weight must lie in [-1, 1], got {self.atom_weight}")

    @classmethod
    def from_name(cls, name: str, atom_weight: float = 0.0) -> "KernelFamily":
        """
        Build a family from its config name: sech, lorentz, gauss-printed or gauss-exact.
        """
        names = {
            "sech": (FamilyId.SECH, GaussMode.PRINTED_KERNEL),
            "lorentz": (FamilyId.LORENTZ, GaussMode.PRINTED_KERNEL),
            "gauss-printed": (FamilyId.GAUSS, GaussMode.PRINTED_KERNEL),
            "gauss-exact": (FamilyId.GAUSS, GaussMode.EXACT_PAIR),
        }
        if name not in names:
            raise ConfigError(f"Unknown kernel family {name!r}. Available families are: {', '.join(names)}")
        family_id, gauss_mode = names[name]
        return cls(family_id, gauss_mode, atom_weight)

    @property
    def name(self) -> str:
        if self.family_id == FamilyId.GAUSS:
            return f"gauss-{self.gauss_mode.value}"
        return self.family_id.value

    @property
    def has_kink(self) -> bool:
        return self.family_id == FamilyId.LORENTZ


def kernel_value(fam: KernelFamily, k):
    k = np.asarray(k, dtype=float)
    if fam.family_id == FamilyId.SECH:
        value = 0.5 * np.asarray(sech(0.5 * np.pi * k))
    elif fam.family_id == FamilyId.LORENTZ:
        value = 0.5 * np.exp(-np.abs(k))
    elif fam.gauss_mode == GaussMode.PRINTED_KERNEL:
        value = np.exp(-k * k) / np.sqrt(np.pi)
    else:
        value = np.exp(-0.25 * k * k) / (2.0 * np.sqrt(np.pi))
    return float(value) if value.ndim == 0 else value


def position_function(fam: KernelFamily, x):
    x = np.asarray(x, dtype=float)
    if fam.family_id == FamilyId.SECH:
        value = np.asarray(sech(x))
    elif fam.family_id == FamilyId.LORENTZ:
        value = 1.0 / (1.0 + x * x)
    elif fam.gauss_mode == GaussMode.PRINTED_KERNEL:
        value = np.exp(-0.25 * x * x)
    else:
        value = np.exp(-x * x)
    return float(value) if value.ndim == 0 else value


def tail_cutoff(fam: KernelFamily, tol: float) -> float:
    """
    Half-width K such that the kernel mass outside [-K, K] is at most tol.
    """
    if fam.family_id == FamilyId.SECH:
        # 1/2 sech(pi k/2) <= exp(-pi k/2), so the two tails hold at most (4/pi) exp(-pi K/2).
        return max(1.0, (2.0 / np.pi) * np.log(4.0 / (np.pi * tol)))
    if fam.family_id == FamilyId.LORENTZ:
        return max(1.0, np.log(1.0 / tol))
    if fam.gauss_mode == GaussMode.PRINTED_KERNEL:
        return max(1.0, float(special.erfcinv(tol)))
    return max(1.0, 2.0 * float(special.erfcinv(tol)))


def _quad(func, a, b, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            return integrate.quad(func, a, b, **kwargs)
        except integrate.IntegrationWarning as e:
            raise NumericalFailure(f"Quadrature on [{a}, {b}] did not converge: {e}") from e


def kernel_normalization(fam: KernelFamily) -> float:
    # The kernels are even; split at 0 so the Lorentz kink is an endpoint.
    value, _ = _quad(lambda k: kernel_value(fam, k), 0.0, np.inf, epsabs=1e-13, epsrel=1e-12)
    return 2.0 * value


def fourier_inverse(fam: KernelFamily, x: float, tol: float = 1e-10) -> tuple:
    """
    int dk exp(ikx) sigma_hat(k) as (value, error bound).

    The kernel is even, so this is 2 int_0^K cos(kx) sigma_hat(k) dk plus a tail
    of at most tol.
    """
    cutoff = tail_cutoff(fam, tol)
    if x == 0:
        value, error = _quad(lambda k: kernel_value(fam, k), 0.0, cutoff, epsabs=tol, limit=200)
    else:
        value, error = _quad(
            lambda k: kernel_value(fam, k), 0.0, cutoff, weight="cos", wvar=x, epsabs=tol, limit=200
        )
    return 2.0 * value, 2.0 * error + tol


def verify_fourier_pair(
    fam: KernelFamily,
    grid: Sequence[float],
    target: Callable = None,
) -> AccuracyReport:
    """
    Check sigma(x) = int dk exp(ikx) sigma_hat(k) on a grid.

    Args:
        fam (KernelFamily): The kernel family.
        grid (Sequence[float]): Points x at which to compare.
        target (Callable, optional): The function the transform should reproduce.
            Defaults to position_function(fam).

    Returns:
        AccuracyReport: The largest deviation between the transform and the target.
    """
    grid = np.asarray(grid, dtype=float)
    if not np.all(np.isfinite(grid)):
        raise DomainError("Fourier check grid must be finite")
    if target is None:
        target = lambda x: position_function(fam, x)  # noqa: E731
    worst = 0.0
    for x in grid:
        value, _ = fourier_inverse(fam, float(x))
        worst = max(worst, abs(value - float(target(float(x)))))
    logger.info("Fourier check for %s: max deviation %.3e over %d points", fam.name, worst, grid.size)
    description = f"{grid.size} points on [{grid.min():g}, {grid.max():g}]"
    return AccuracyReport(worst, description)
