"""
Smeared inner products through the mass shell.

With W the Wightman function,
    W(f, g) = int dk / (2 pi 2 omega_k) conj(f~(omega_k, k)) g~(omega_k, k),
    f~(omega, k) = int d^2x exp(i (omega t - k x)) f(t, x),
and <f|g> = H(f, g) + (i/2) Delta_PJ(f, g) = 2 Re W(f, g) + i Im W(f, g).

The bump depends on r = max(|c|, |d|) in light-cone coordinates centred on
the diamond, so splitting the square along its diagonals leaves a 1D integral
    f~ = exp(i (omega t_c - k x_c)) (R^2 / 2) 4 int_0^1 b(r) [cos(Ar) sin(Br) / B + cos(Br) sin(Ar) / A] dr
with A = R (omega - k) / 2 and B = R (omega + k) / 2. The k integral runs in
rapidity, k = m sinh(u), where dk / omega = du and omega -+ k = m exp(-+u).
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from qftbell.errors import NumericalFailure
from qftbell.integration import ComplexEstimate, IntegrationSettings
from qftbell.propagators import MassParam
from qftbell.testfn import DiamondBump, radial_profile

logger = logging.getLogger(__name__)

RADIAL_NODES = 16
BASE_PANELS = 8
MAX_MOMENTUM = 1e7


@lru_cache(maxsize=128)
def _radial_rule(panels: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = leggauss(RADIAL_NODES)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    middle = 0.5 * (edges[1:] + edges[:-1])
    r = (middle[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return r, weights


def _panels(b: DiamondBump, k_max: float, s: IntegrationSettings) -> int:
    return BASE_PANELS + int(math.ceil(s.radial_panels_per_radian * b.R * k_max))


def _transform_rapidity(b: DiamondBump, u, m: float, panels: int) -> np.ndarray:
    u = np.atleast_1d(np.asarray(u, dtype=float))
    r, weights = _radial_rule(panels)
    profile = weights * radial_profile(b, r)
    A = 0.5 * b.R * m * np.exp(-u)
    B = 0.5 * b.R * m * np.exp(u)
    Ar = np.outer(A, r)
    Br = np.outer(B, r)
    # r sinc(Br / pi) is sin(Br) / B without the 0/0 at B = 0.
    integrand = np.cos(Ar) * r * np.sinc(Br / np.pi) + np.cos(Br) * r * np.sinc(Ar / np.pi)
    radial = 4.0 * (integrand @ profile)
    omega = m * np.cosh(u)
    k = m * np.sinh(u)
    phase = np.exp(1j * (omega * b.t0 - k * b.direction * b.R))
    return 0.5 * b.R * b.R * phase * radial


def mass_shell_transform(b: DiamondBump, k, m: MassParam, s: IntegrationSettings = None):
    """
    f~(omega_k, k) of a diamond bump.

    Args:
        b (DiamondBump): The test function.
        k (float or np.ndarray): Spatial momenta.
        m (MassParam): The mass fixing omega_k = sqrt(k^2 + m^2).
        s (IntegrationSettings, optional): Supplies the radial panel density.

    Returns:
        complex or np.ndarray: The transform.
    """
    s = s or IntegrationSettings()
    k_arr = np.asarray(k, dtype=float)
    panels = _panels(b, float(np.max(np.abs(k_arr), initial=0.0)), s)
    value = _transform_rapidity(b, np.arcsinh(k_arr.ravel() / m.m), m.m, panels).reshape(k_arr.shape)
    return complex(value) if value.ndim == 0 else value


def momentum_cutoff(b: DiamondBump, m: MassParam, s: IntegrationSettings) -> float:
    """
    Smallest K = 2^j / R with |f~(+-K)| below momentum_tail_tol times |f~(0)|.
    """
    reference = abs(mass_shell_transform(b, 0.0, m, s))
    k = 1.0 / b.R
    if reference == 0.0:
        return k
    tail = math.inf
    while k <= MAX_MOMENTUM:
        tail = np.max(np.abs(mass_shell_transform(b, np.array([-k, k]), m, s)))
        if tail < s.momentum_tail_tol * reference:
            logger.debug("Momentum cutoff %.4g for %s", k, b)
            return k
        k *= 2.0
    raise NumericalFailure(
        f"Mass-shell transform of {b} does not decay below {s.momentum_tail_tol} by k = {MAX_MOMENTUM:g}",
        achieved_error=float(tail / reference),
    )


def momentum_inner_product(
    a: DiamondBump, b: DiamondBump, m: MassParam, s: IntegrationSettings
) -> ComplexEstimate:
    """
    <a|b> = H(a, b) + (i/2) Delta_PJ(a, b) by quadrature over the mass shell.

    Args:
        a (DiamondBump): The first test function.
        b (DiamondBump): The second test function.
        m (MassParam): The mass.
        s (IntegrationSettings): Tolerances of the transform and the rapidity integral.

    Returns:
        ComplexEstimate: Real part H(a, b), imaginary part Delta_PJ(a, b) / 2.
    """
    k_max = max(momentum_cutoff(a, m, s), momentum_cutoff(b, m, s))
    cutoff = float(np.arcsinh(k_max / m.m))
    panels_a, panels_b = _panels(a, k_max, s), _panels(b, k_max, s)
    scale = abs(_transform_rapidity(a, 0.0, m.m, panels_a)[0]) * abs(_transform_rapidity(b, 0.0, m.m, panels_b)[0])
    if scale == 0.0:
        return ComplexEstimate(0j, 0.0)

    def integrand(u):
        product = np.conj(_transform_rapidity(a, u, m.m, panels_a)[0]) * _transform_rapidity(b, u, m.m, panels_b)[0]
        return np.array([product.real, product.imag]) / (4.0 * np.pi)

    logger.info("Computing mass-shell inner product over |u| <= %.3f", cutoff)
    value, error, info = integrate.quad_vec(
        integrand,
        -cutoff,
        cutoff,
        epsabs=1e-13 * scale,
        epsrel=1e-10,
        points=(0.0,),
        full_output=True,
    )
    if info.status != 0:
        raise NumericalFailure(
            f"Rapidity integral did not converge: {info.message}",
            achieved_error=float(error),
            diagnostics=dict(cutoff=cutoff, evaluations=info.neval),
        )
    tail = s.momentum_tail_tol * scale * cutoff / np.pi
    return ComplexEstimate(complex(2.0 * value[0], value[1]), 2.0 * float(error) + tail)
