"""
Closed-form Gram model of the four test functions derived from modular theory.

With f = eta (1+s) phi, f' = eta' (1+s)(i phi), g = sigma j(1+s) phi and
g' = sigma' j(1+s)(i phi), and phi, j phi in different spectral subspaces of
the modular operator (parameter lambda), the inner products reduce to
    ||f||^2 = eta^2 (1 + lambda^2),   <f|g> = 2 eta sigma lambda,
    <f'|g'> = 2 eta' sigma' lambda,   <f|g'> = <f'|g> = 0.
Only these consequences are represented here.
"""

import math
from dataclasses import asdict, dataclass
from typing import Mapping

from qftbell.errors import ConfigError
from qftbell.gram import GramMatrix, Overlaps


@dataclass(frozen=True)
class BellParams:
    eta: float
    eta_p: float
    sigma: float
    sigma_p: float
    lam: float

    def __post_init__(self):
        for name in ("eta", "eta_p", "sigma", "sigma_p", "lam"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"Bell parameter {name} must be finite")
        # The closed interval is accepted so the decoupled (0) and saturated (1) limits can be evaluated.
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigError(f"lambda must lie in [0, 1], got {self.lam}")

    @classmethod
    def from_mapping(cls, values: Mapping) -> "BellParams":
        values = dict(values)
        if "lambda" in values:
            values["lam"] = values.pop("lambda")
        unknown = set(values) - {"eta", "eta_p", "sigma", "sigma_p", "lam"}
        if unknown:
            raise ConfigError(f"Unknown Bell parameters: {', '.join(sorted(unknown))}")
        try:
            return cls(**{k: float(v) for k, v in values.items()})
        except TypeError as e:
            raise ConfigError(f"Incomplete Bell parameters: {e}") from e

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def norm_factor(self) -> float:
        return 1.0 + self.lam * self.lam


def tt_gram(p: BellParams) -> GramMatrix:
    n = p.norm_factor
    return GramMatrix(
        Hff=p.eta ** 2 * n,
        Hfpfp=p.eta_p ** 2 * n,
        Hgg=p.sigma ** 2 * n,
        Hgpgp=p.sigma_p ** 2 * n,
        Hfg=2.0 * p.eta * p.sigma * p.lam,
        Hfpg=0.0,
        Hfgp=0.0,
        Hfpgp=2.0 * p.eta_p * p.sigma_p * p.lam,
    )


def tt_overlaps(lam: float) -> Overlaps:
    if not 0.0 <= lam <= 1.0:
        raise ConfigError(f"lambda must lie in [0, 1], got {lam}")
    alpha = 2.0 * lam / (1.0 + lam * lam)
    return Overlaps(alpha, 0.0, 0.0, alpha)


def normalized_gram(p: BellParams, overlaps: Overlaps) -> GramMatrix:
    """
    Gram matrix of test functions normalized to ||f||^2 = eta^2 (1 + lambda^2)
    etc., whose cross entries are fixed by the overlap coefficients.

    Args:
        p (BellParams): Amplitudes and lambda.
        overlaps (Overlaps): (alpha, beta, gamma, delta).

    Returns:
        GramMatrix: The Gram matrix entering the parametrized correlator.
    """
    n = p.norm_factor
    alpha, beta, gamma, delta = overlaps
    return GramMatrix(
        Hff=p.eta ** 2 * n,
        Hfpfp=p.eta_p ** 2 * n,
        Hgg=p.sigma ** 2 * n,
        Hgpgp=p.sigma_p ** 2 * n,
        Hfg=p.eta * p.sigma * n * alpha,
        Hfpg=p.eta_p * p.sigma * n * beta,
        Hfgp=p.eta * p.sigma_p * n * gamma,
        Hfpgp=p.eta_p * p.sigma_p * n * delta,
    )
