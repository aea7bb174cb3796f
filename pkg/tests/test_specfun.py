import numpy as np
import pytest

from qftbell.errors import DomainError
from qftbell.specfun import bessel_j0, bessel_k0, bessel_y0, measure_accuracy, sech

from conftest import mp_j0, mp_k0, mp_y0


def test_published_values():
    assert bessel_j0(0.0) == 1.0
    assert bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-14)
    assert bessel_y0(1.0) == pytest.approx(0.08825696421567696, abs=1e-14)
    assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-13)
    assert sech(0.0) == 1.0
    assert sech(1.0) == pytest.approx(0.6480542736638855, rel=1e-15)
    assert sech(1000.0) == 0.0


def test_j0_against_oracle():
    grid = np.concatenate([np.linspace(0.0, 50.0, 201), np.geomspace(50.0, 1e4, 60)])
    report = measure_accuracy(bessel_j0, mp_j0, grid, "0 to 1e4")
    assert report.max_abs_error < 1e-10


def test_y0_against_oracle():
    grid = np.concatenate([np.geomspace(1e-12, 1.0, 60), np.linspace(1.0, 50.0, 100), np.geomspace(50.0, 1e4, 40)])
    report = measure_accuracy(bessel_y0, mp_y0, grid, "1e-12 to 1e4")
    assert report.max_abs_error < 1e-10


def test_k0_against_oracle():
    grid = np.geomspace(1e-12, 700.0, 200)
    report = measure_accuracy(bessel_k0, mp_k0, grid, "1e-12 to 700", relative=True)
    assert report.max_abs_error < 1e-10


def test_series_branch_is_continuous():
    below = np.nextafter(1e-5, 0.0)
    assert bessel_k0(below) == pytest.approx(bessel_k0(1e-5), rel=1e-9)
    assert bessel_y0(below) == pytest.approx(bessel_y0(1e-5), rel=1e-9)


def test_j0_is_even():
    x = np.linspace(-30.0, 30.0, 121)
    assert np.array_equal(bessel_j0(x), bessel_j0(-x))


def _derivative(func, x, h):
    return (-func(x + 2 * h) + 8 * func(x + h) - 8 * func(x - h) + func(x - 2 * h)) / (12 * h)


def test_wronskian():
    for x in np.geomspace(0.1, 100.0, 25):
        h = 1e-3 * min(x, 1.0)
        dj = _derivative(bessel_j0, x, h)
        dy = _derivative(bessel_y0, x, h)
        wronskian = bessel_j0(x) * dy - dj * bessel_y0(x)
        assert wronskian == pytest.approx(2.0 / (np.pi * x), abs=1e-8)


def test_k0_positive_and_decreasing():
    values = bessel_k0(np.geomspace(1e-10, 600.0, 400))
    assert np.all(values > 0)
    assert np.all(np.diff(values) < 0)


def test_sech_bounded_and_even():
    x = np.linspace(-800.0, 800.0, 1601)
    values = sech(x)
    assert np.all((values >= 0) & (values <= 1))
    assert np.array_equal(values, sech(-x))


@pytest.mark.parametrize("func", [bessel_y0, bessel_k0])
@pytest.mark.parametrize("x", [0.0, -1.0])
def test_logarithmic_branch_rejects_nonpositive(func, x):
    with pytest.raises(DomainError):
        func(x)


def test_nonfinite_rejected():
    with pytest.raises(DomainError):
        bessel_j0(float("nan"))
