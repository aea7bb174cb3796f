import mpmath
import pytest

from qftbell.integration import IntegrationSettings

mpmath.mp.dps = 30


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: minute-scale checks at full point counts")


def mp_j0(x: float) -> float:
    return float(mpmath.besselj(0, mpmath.mpf(x)))


def mp_y0(x: float) -> float:
    return float(mpmath.bessely(0, mpmath.mpf(x)))


def mp_k0(x: float) -> float:
    return float(mpmath.besselk(0, mpmath.mpf(x)))


def mp_fourier(kernel, x: float) -> float:
    """int dk exp(ikx) kernel(k) for an even kernel, at 30 digits."""
    x = mpmath.mpf(x)
    return float(2 * mpmath.quad(lambda k: kernel(k) * mpmath.cos(k * x), [0, 1, 10, mpmath.inf]))


@pytest.fixture
def quick_settings() -> IntegrationSettings:
    return IntegrationSettings(points_per_replicate=2 ** 12, replicates=8, seed=12345)
