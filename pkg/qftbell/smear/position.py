"""
Smeared two-point integrals by sampling the product of the two diamonds.

Each diamond is the image of the unit square under lightcone_map, so
    int d^2x d^2y a(x) K(x - y) b(y)
is an integral over the 4D unit hypercube with the constant Jacobian
2 R_a^2 * 2 R_b^2. Replicate i draws its nodes from the i-th child of
SeedSequence(seed): a scrambled Sobol net for the qmc scheme, uniform
pseudo-random points for mc.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np
from scipy.stats import qmc

from qftbell.errors import NumericalFailure
from qftbell.integration import Estimate, IntegrationSettings, Scheme
from qftbell.propagators import MassParam, hadamard, pauli_jordan
from qftbell.testfn import DiamondBump, bump_values, lightcone_map

logger = logging.getLogger(__name__)

CHUNK = 2 ** 16


def _nodes(s: IntegrationSettings, seed: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if s.scheme == Scheme.QMC:
        sampler = qmc.Sobol(d=4, scramble=True, seed=rng)
        return sampler.random_base2(m=int(np.log2(s.sample_size)))
    return rng.random((s.sample_size, 4))


def _replicate(
    kernel: Callable,
    a: DiamondBump,
    b: DiamondBump,
    s: IntegrationSettings,
    seed: np.random.SeedSequence,
) -> float:
    nodes = _nodes(s, seed)
    total = 0.0
    for start in range(0, nodes.shape[0], CHUNK):
        chunk = nodes[start : start + CHUNK]
        t1, x1 = lightcone_map(a, chunk[:, 0], chunk[:, 1])
        t2, x2 = lightcone_map(b, chunk[:, 2], chunk[:, 3])
        weight = bump_values(a, t1, x1) * bump_values(b, t2, x2)
        inside = weight > 0
        if not np.any(inside):
            continue
        values = kernel(t1[inside] - t2[inside], x1[inside] - x2[inside])
        total += float(np.sum(weight[inside] * values))
    return a.jacobian * b.jacobian * total / nodes.shape[0]


def smeared_integral(
    kernel: Callable,
    a: DiamondBump,
    b: DiamondBump,
    s: IntegrationSettings,
    label: str = "two-point",
) -> Estimate:
    """
    Estimate int d^2x d^2y a(x) kernel(x - y) b(y) from independent replicates.

    Args:
        kernel (Callable): kernel(t, x) on arrays of separations.
        a (DiamondBump): The first test function.
        b (DiamondBump): The second test function.
        s (IntegrationSettings): Scheme, point count, replicates, seed and workers.
        label (str): Name used in log messages and diagnostics.

    Returns:
        Estimate: Replicate mean and its standard error.
    """
    seeds = np.random.SeedSequence(s.seed).spawn(s.replicates)
    logger.info(
        "Computing smeared %s integral with %d replicates of %d %s points",
        label,
        s.replicates,
        s.sample_size,
        s.scheme.value,
    )
    if s.workers > 1:
        with ThreadPoolExecutor(max_workers=s.workers) as pool:
            values = list(pool.map(lambda seed: _replicate(kernel, a, b, s, seed), seeds))
    else:
        values = [_replicate(kernel, a, b, s, seed) for seed in seeds]
    if not np.all(np.isfinite(values)):
        raise NumericalFailure(
            f"Smeared {label} integral produced non-finite replicates",
            diagnostics=dict(replicates=values, first=a, second=b, points=s.sample_size),
        )
    return Estimate.from_replicates(values)


def smeared_hadamard(a: DiamondBump, b: DiamondBump, m: MassParam, s: IntegrationSettings) -> Estimate:
    """H(a, b), with near-cone samples on the logarithmic branch of the propagator."""

    def kernel(t, x):
        return hadamard(t, x, m.m, guard=s.lightcone_guard)

    return smeared_integral(kernel, a, b, s, label="Hadamard")


def smeared_pauli_jordan(a: DiamondBump, b: DiamondBump, m: MassParam, s: IntegrationSettings) -> Estimate:
    def kernel(t, x):
        return pauli_jordan(t, x, m.m)

    return smeared_integral(kernel, a, b, s, label="Pauli-Jordan")
