import mpmath
import numpy as np
import pytest

from qftbell.constants import FAMILIES
from qftbell.errors import ConfigError, DomainError
from qftbell.kernels import (
    KernelFamily,
    fourier_inverse,
    kernel_normalization,
    kernel_value,
    position_function,
    verify_fourier_pair,
)

from conftest import mp_fourier

GRID = np.arange(-5.0, 5.0 + 1e-9, 0.1)


def test_kernel_values_at_origin():
    assert kernel_value(KernelFamily.from_name("lorentz"), 0.0) == 0.5
    assert kernel_value(KernelFamily.from_name("sech"), 0.0) == 0.5
    assert isinstance(kernel_value(KernelFamily.from_name("sech"), 1.0), float)
    assert kernel_value(KernelFamily.from_name("sech"), np.array([0.0, 0.0])).tolist() == [0.5, 0.5]
    assert kernel_value(KernelFamily.from_name("gauss-exact"), 0.0) == pytest.approx(0.28209479177, abs=1e-11)


def test_position_values():
    assert position_function(KernelFamily.from_name("lorentz"), 0.0) == 1.0
    assert position_function(KernelFamily.from_name("sech"), 0.0) == 1.0
    assert position_function(KernelFamily.from_name("gauss-printed"), 2.0) == pytest.approx(np.exp(-1.0), abs=1e-15)


@pytest.mark.parametrize("name", FAMILIES)
def test_kernels_even_positive_normalized(name):
    fam = KernelFamily.from_name(name)
    k = np.linspace(-20.0, 20.0, 401)
    values = kernel_value(fam, k)
    assert np.all(values >= 0)
    assert np.array_equal(values, kernel_value(fam, -k))
    assert kernel_normalization(fam) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("name", FAMILIES)
def test_fourier_pair(name):
    fam = KernelFamily.from_name(name)
    report = verify_fourier_pair(fam, GRID)
    assert report.max_abs_error < 1e-6


@pytest.mark.parametrize("name", FAMILIES)
def test_transform_against_oracle(name):
    fam = KernelFamily.from_name(name)
    for x in (0.0, 0.7, 2.5):
        value, error = fourier_inverse(fam, x)
        expected = mp_fourier(lambda k: kernel_value(fam, float(k)), x)
        assert value == pytest.approx(expected, abs=max(error, 1e-8))


def test_printed_gaussian_pair_fails():
    fam = KernelFamily.from_name("gauss-printed")
    report = verify_fourier_pair(fam, GRID, target=lambda x: np.exp(-x * x))
    expected = np.max(np.abs(np.exp(-0.25 * GRID * GRID) - np.exp(-GRID * GRID)))
    assert report.max_abs_error == pytest.approx(expected, abs=1e-6)
    assert report.max_abs_error > 0.3


def test_sech_transform_closed_form():
    # int dk exp(ikx) sech(pi k / 2) / 2 = sech(x), checked at 30 digits.
    value = mp_fourier(lambda k: mpmath.sech(mpmath.pi * k / 2) / 2, 1.3)
    assert value == pytest.approx(float(mpmath.sech(1.3)), abs=1e-12)


def test_family_names():
    assert KernelFamily.from_name("gauss-exact").name == "gauss-exact"
    assert KernelFamily.from_name("lorentz").has_kink
    with pytest.raises(ConfigError):
        KernelFamily.from_name("cauchy")
    with pytest.raises(DomainError):
        KernelFamily.from_name("sech", atom_weight=1.5)
