"""
Vacuum correlators of the Weyl-built observables.

For spacelike f, g the Weyl two-point function is
    <0| e^{ik phi(f)} e^{ip phi(g)} |0> = exp(-(k^2 F + p^2 G + 2kp X) / 2)
with F = H(f,f), G = H(g,g), X = H(f,g), and
    <A B> = int dk dp sigma_hat(k) sigma_hat(p) exp(-(k^2 F + p^2 G + 2kp X) / 2).
The k^2 and p^2 factors are kept in every term of the CHSH combination.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from qftbell.errors import DomainError, NumericalFailure
from qftbell.gram import GramMatrix, Overlaps
from qftbell.integration import Estimate, IntegrationSettings, QuadRule
from qftbell.kernels import KernelFamily, kernel_value, tail_cutoff
from qftbell.modular import BellParams, normalized_gram, tt_gram

logger = logging.getLogger(__name__)

PSD_TOLERANCE = 1e-9
INITIAL_NODES = 48
MAX_NODES = 1536
ROW_CHUNK = 256


@dataclass(frozen=True)
class PairQuadratic:
    F: float
    G: float
    X: float

    def __post_init__(self):
        if self.F < 0 or self.G < 0:
            raise DomainError(f"Squared norms must be nonnegative, got F={self.F}, G={self.G}")
        slack = PSD_TOLERANCE * max(1.0, self.F * self.G)
        if self.X * self.X > self.F * self.G + slack:
            raise DomainError(f"Quadratic form is not positive semidefinite: X^2={self.X ** 2} > FG={self.F * self.G}")

    @classmethod
    def clipped(cls, F: float, G: float, X: float) -> "PairQuadratic":
        """Clip X onto the Cauchy-Schwarz bound; used for entries carrying sampling noise."""
        bound = math.sqrt(max(F, 0.0) * max(G, 0.0))
        return cls(F, G, min(max(X, -bound), bound))


def weyl_two_point(k, p, q: PairQuadratic):
    k = np.asarray(k, dtype=float)
    p = np.asarray(p, dtype=float)
    value = np.exp(-0.5 * (k * k * q.F + p * p * q.G + 2.0 * k * p * q.X))
    return float(value) if value.ndim == 0 else value


@lru_cache(maxsize=None)
def _gauss_legendre_unit(n: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=64)
def _line_rule(cutoff: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights on [-cutoff, cutoff], n per half line.

    Each half is mapped as k = cutoff * s^2, which clusters nodes at the
    origin where narrow Gaussian factors live and puts the Lorentz kink at an
    endpoint.
    """
    s, w = _gauss_legendre_unit(n)
    k = cutoff * s * s
    wk = 2.0 * cutoff * s * w
    return np.concatenate([-k[::-1], k]), np.concatenate([wk[::-1], wk])


def _tensor_integral(fam: KernelFamily, q: PairQuadratic, cutoff: float, n: int) -> float:
    k, w = _line_rule(cutoff, n)
    weighted = w * kernel_value(fam, k)
    column = q.G * k * k
    total = 0.0
    for start in range(0, k.size, ROW_CHUNK):
        rows = k[start : start + ROW_CHUNK, None]
        exponent = -0.5 * (q.F * rows * rows + column[None, :] + 2.0 * q.X * rows * k[None, :])
        total += float(weighted[start : start + ROW_CHUNK] @ np.exp(exponent) @ weighted)
    return total


def _tensor_pair(fam: KernelFamily, q: PairQuadratic, tol: float) -> Estimate:
    cutoff = tail_cutoff(fam, 0.1 * tol)
    n = INITIAL_NODES
    previous = _tensor_integral(fam, q, cutoff, n)
    change = math.inf
    while n < MAX_NODES:
        n *= 2
        current = _tensor_integral(fam, q, cutoff, n)
        change = abs(current - previous)
        if change <= tol:
            return Estimate(current, change + 0.2 * tol)
        logger.debug("Refining (k, p) tensor rule to %d nodes per half line, change %.2e", n, change)
        previous = current
    raise NumericalFailure(
        f"Tensor rule for (F={q.F}, G={q.G}, X={q.X}) did not reach {tol}",
        achieved_error=change,
        diagnostics=dict(nodes=n, family=fam.name),
    )


def _quad(func, a, b, tol, points=None):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            return integrate.quad(func, a, b, epsabs=tol, epsrel=1e-11, limit=200, points=points)
        except integrate.IntegrationWarning as e:
            raise NumericalFailure(f"Adaptive quadrature on [{a}, {b}] failed: {e}") from e


def _adaptive_pair(fam: KernelFamily, q: PairQuadratic, tol: float) -> Estimate:
    cutoff = tail_cutoff(fam, 0.1 * tol)
    inner_tol = 0.05 * tol / (2.0 * cutoff)
    halves = ((-cutoff, 0.0), (0.0, cutoff))

    def inner(k):
        # For fixed k the p-integrand peaks at the conditional mean -kX/G.
        peak = -k * q.X / q.G if q.G > 0 else 0.0
        total = 0.0
        for a, b in halves:
            points = [peak] if a < peak < b else None
            value, _ = _quad(
                lambda p: kernel_value(fam, p) * weyl_two_point(k, p, q), a, b, inner_tol, points
            )
            total += value
        return kernel_value(fam, k) * total

    value, error = 0.0, 0.0
    for a, b in halves:
        part, part_error = _quad(inner, a, b, 0.25 * tol)
        value += part
        error += part_error
    return Estimate(value, error + 0.2 * tol)


def single_expectation(fam: KernelFamily, F: float, s: IntegrationSettings) -> float:
    """<0|A|0> = int dk sigma_hat(k) exp(-k^2 F / 2) for the pure kernel part."""
    cutoff = tail_cutoff(fam, 0.1 * s.quad_tol)
    k, w = _line_rule(cutoff, MAX_NODES // 2)
    return float(np.sum(w * kernel_value(fam, k) * np.exp(-0.5 * F * k * k)))


def pair_correlator(fam: KernelFamily, q: PairQuadratic, s: IntegrationSettings) -> Estimate:
    """
    <0| A(f) B(g) |0> for one kernel family.

    Args:
        fam (KernelFamily): The kernel family (and constant admixture).
        q (PairQuadratic): H(f,f), H(g,g), H(f,g).
        s (IntegrationSettings): quad_rule and quad_tol select the (k, p) rule.

    Returns:
        Estimate: Value and achieved quadrature error.
    """
    if s.quad_rule == QuadRule.TENSOR:
        kernel_part = _tensor_pair(fam, q, s.quad_tol)
    else:
        kernel_part = _adaptive_pair(fam, q, s.quad_tol)
    c0 = fam.atom_weight
    if c0 == 0.0:
        return kernel_part
    w = 1.0 - abs(c0)
    cross = single_expectation(fam, q.F, s) + single_expectation(fam, q.G, s)
    value = c0 * c0 + c0 * w * cross + w * w * kernel_part.value
    return Estimate(value, w * w * kernel_part.std_error)


TERM_NAMES = ("AB", "ApB", "ABp", "ApBp")


@dataclass(frozen=True)
class BellResult:
    value: float
    terms: Tuple[float, float, float, float]
    num_error: float
    family: KernelFamily
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    @staticmethod
    def header() -> list:
        return ["value", *TERM_NAMES, "error", "family"]

    def as_row(self) -> list:
        return [self.value, *self.terms, self.num_error, self.family.name]

    @property
    def exceeds_classical(self) -> bool:
        return abs(self.value) > 2.0


def bell_chsh(
    fam: KernelFamily, g: GramMatrix, s: IntegrationSettings, provenance: dict = None
) -> BellResult:
    """
    <AB> + <A'B> + <AB'> - <A'B'> from a Gram matrix.

    The four terms use the pairs (f,g), (f',g), (f,g'), (f',g') and are
    combined in that fixed order whether or not they run concurrently. Cross
    entries within the sampling error of the Cauchy-Schwarz bound are clipped
    onto it.
    """
    g.check_psd()
    quadratics = [PairQuadratic.clipped(F, G, X) for F, G, X in g.pair_quadratics()]
    if s.workers > 1:
        with ThreadPoolExecutor(max_workers=min(4, s.workers)) as pool:
            estimates = list(pool.map(lambda q: pair_correlator(fam, q, s), quadratics))
    else:
        estimates = [pair_correlator(fam, q, s) for q in quadratics]
    terms = tuple(e.value for e in estimates)
    value = terms[0] + terms[1] + terms[2] - terms[3]
    num_error = math.fsum(e.std_error for e in estimates)
    logger.debug("CHSH %s: terms %s -> %.6f", fam.name, terms, value)
    return BellResult(value, terms, num_error, fam, dict(provenance or {}))


def tt_bell(fam: KernelFamily, p: BellParams, s: IntegrationSettings) -> BellResult:
    return bell_chsh(fam, tt_gram(p), s, provenance=dict(model="tt", **p.as_dict()))


def overlap_bell(fam: KernelFamily, p: BellParams, overlaps: Overlaps, s: IntegrationSettings) -> BellResult:
    """The CHSH value with cross inner products fixed by overlap coefficients."""
    provenance = dict(model="overlaps", **p.as_dict(), **overlaps._asdict())
    return bell_chsh(fam, normalized_gram(p, overlaps), s, provenance=provenance)
