import numpy as np
import pytest

from qftbell.errors import DomainError
from qftbell.propagators import SpacetimePoint
from qftbell.testfn import (
    DiamondBump,
    DiamondQuartet,
    NormalizedTestFunction,
    Side,
    bump_value,
    bump_values,
    inverse_lightcone_coords,
    lightcone_coords,
)


def test_bump_values():
    right = DiamondBump(Side.RIGHT, 1.0, 1.0)
    assert bump_value(right, SpacetimePoint(0.0, 1.0)) == pytest.approx(np.exp(-1.0), rel=1e-15)
    assert bump_value(right, SpacetimePoint(0.0, 2.0)) == 0.0
    left = DiamondBump("left", 1.0, 2.0)
    assert bump_value(left, SpacetimePoint(0.5, -1.0)) == pytest.approx(0.06948345, abs=1e-8)


def test_support_is_exact():
    rng = np.random.default_rng(7)
    t, x = rng.uniform(-3.0, 3.0, (2, 100_000))
    for bump in (DiamondBump("right", 1.0, 1.0), DiamondBump("left", 1.3, 0.5)):
        rho = np.abs(x - bump.direction * bump.R) + np.abs(t)
        values = bump_values(bump, t, x)
        assert np.all(values[rho >= bump.R] == 0.0)
        assert np.all(values[rho < 0.99 * bump.R] > 0.0)


def test_smooth_decay_at_the_edge():
    bump = DiamondBump("right", 1.0, 1.0)
    rho = np.linspace(0.9991, 0.99999, 50)
    assert np.all(bump_values(bump, np.zeros_like(rho), 1.0 + rho) < 1e-12)


def test_lightcone_coords():
    assert lightcone_coords(DiamondBump("right", 1.0, 1.0), 0.5, 0.5) == SpacetimePoint(0.0, 1.0)
    assert lightcone_coords(DiamondBump("right", 1.0, 1.0), 1.0, 0.0) == SpacetimePoint(1.0, 1.0)
    assert lightcone_coords(DiamondBump("left", 2.0, 1.0), 0.0, 0.0) == SpacetimePoint(0.0, 0.0)
    with pytest.raises(DomainError):
        lightcone_coords(DiamondBump("right", 1.0, 1.0), 1.5, 0.0)


def test_lightcone_coords_cover_the_diamond():
    rng = np.random.default_rng(8)
    for bump in (DiamondBump("right", 0.7, 1.0), DiamondBump("left", 2.0, 1.0, t0=0.3)):
        for u, v in rng.uniform(0.0, 1.0, (200, 2)):
            p = lightcone_coords(bump, u, v)
            assert abs(p.x - bump.direction * bump.R) + abs(p.t - bump.t0) <= bump.R * (1 + 1e-14)
            assert inverse_lightcone_coords(bump, p) == pytest.approx((u, v), abs=1e-14)


def test_diamonds_touch_at_the_origin():
    right = DiamondBump("right", 1.0, 1.0)
    left = DiamondBump("left", 1.0, 1.0)
    t, x = np.meshgrid(np.linspace(-1.0, 1.0, 201), np.linspace(-2.0, 2.0, 401))
    both = (bump_values(right, t, x) > 0) & (bump_values(left, t, x) > 0)
    assert not np.any(both)
    assert lightcone_coords(right, 0.0, 0.0) == lightcone_coords(left, 0.0, 0.0)


def test_quartet_defaults_r_prime_to_r():
    quartet = DiamondQuartet.from_parameters(1.0, 2.0, 3.0, 4.0, R=1.5)
    assert quartet.gp.R == 1.5
    assert quartet.fp.sharpness == 2.0
    assert quartet.gp.side == Side.LEFT
    assert DiamondQuartet.from_parameters(1.0, 2.0, 3.0, 4.0, R=1.5, R_p=0.5).gp.R == 0.5


def test_normalized_test_function():
    f = NormalizedTestFunction(DiamondBump("right", 1.0, 1.0), amplitude=2.0, lambda_factor=0.5)
    with pytest.raises(DomainError):
        f.scale
    f.set_norm(4.0)
    f.set_norm(4.0)
    assert f.scale == pytest.approx(2.0 * np.sqrt(1.25) / 2.0)
    assert f.scale ** 2 * 4.0 == pytest.approx(f.squared_norm)
    with pytest.raises(DomainError):
        f.set_norm(5.0)


@pytest.mark.parametrize("kwargs", [dict(R=0.0, sharpness=1.0), dict(R=1.0, sharpness=-1.0)])
def test_invalid_bumps(kwargs):
    with pytest.raises(DomainError):
        DiamondBump("right", **kwargs)
