from dataclasses import replace

import mpmath
import numpy as np
import pytest

from qftbell.constants import FAMILIES, PUBLISHED_TT_PARAMS
from qftbell.correlator import (
    BellResult,
    PairQuadratic,
    bell_chsh,
    overlap_bell,
    pair_correlator,
    single_expectation,
    tt_bell,
    weyl_two_point,
)
from qftbell.errors import DomainError
from qftbell.gram import GramMatrix
from qftbell.integration import IntegrationSettings, QuadRule
from qftbell.kernels import KernelFamily
from qftbell.modular import BellParams, tt_gram, tt_overlaps

TENSOR = IntegrationSettings()
ADAPTIVE = IntegrationSettings(quad_rule=QuadRule.ADAPTIVE)
PUBLISHED = BellParams.from_mapping(PUBLISHED_TT_PARAMS)
GAUSS = KernelFamily.from_name("gauss-printed")
LORENTZ = KernelFamily.from_name("lorentz")


def gaussian_closed_form(F, G, X):
    return 1.0 / np.sqrt((1.0 + 0.5 * F) * (1.0 + 0.5 * G) - 0.25 * X * X)


def test_weyl_two_point():
    assert weyl_two_point(0.0, 0.0, PairQuadratic(3.0, 5.0, 1.0)) == 1.0
    assert weyl_two_point(1.0, -1.0, PairQuadratic(1.0, 1.0, 1.0)) == 1.0
    assert weyl_two_point(1.0, 1.0, PairQuadratic(1.0, 4.0, 0.0)) == pytest.approx(0.0820849986, rel=1e-9)


def test_pair_quadratic_rejects_indefinite_forms():
    with pytest.raises(DomainError):
        PairQuadratic(1.0, 1.0, 1.5)
    with pytest.raises(DomainError):
        PairQuadratic(-1.0, 1.0, 0.0)
    assert PairQuadratic.clipped(1.0, 4.0, 2.0 + 1e-7).X == 2.0


@pytest.mark.parametrize("settings", [TENSOR, ADAPTIVE], ids=["tensor", "adaptive"])
@pytest.mark.parametrize("name", FAMILIES)
def test_trivial_quadratic_gives_one(name, settings):
    estimate = pair_correlator(KernelFamily.from_name(name), PairQuadratic(0.0, 0.0, 0.0), settings)
    assert estimate.value == pytest.approx(1.0, abs=1e-8)


def test_gaussian_closed_form_tensor():
    rng = np.random.default_rng(21)
    for _ in range(100):
        F, G = rng.uniform(0.0, 50.0, 2)
        X = rng.uniform(-1.0, 1.0) * np.sqrt(F * G)
        estimate = pair_correlator(GAUSS, PairQuadratic(F, G, X), TENSOR)
        assert estimate.value == pytest.approx(gaussian_closed_form(F, G, X), abs=1e-8)
    assert pair_correlator(GAUSS, PairQuadratic(2.0, 2.0, 0.0), TENSOR).value == pytest.approx(0.5, abs=1e-8)


def test_gaussian_closed_form_adaptive():
    rng = np.random.default_rng(22)
    for _ in range(5):
        F, G = rng.uniform(0.0, 20.0, 2)
        X = rng.uniform(-1.0, 1.0) * np.sqrt(F * G)
        estimate = pair_correlator(GAUSS, PairQuadratic(F, G, X), ADAPTIVE)
        assert estimate.value == pytest.approx(gaussian_closed_form(F, G, X), abs=1e-8)


def test_lorentz_factorizes_without_cross_term():
    t = float(mpmath.quad(lambda k: mpmath.exp(-k - k * k / 2), [0, mpmath.inf]))
    estimate = pair_correlator(LORENTZ, PairQuadratic(1.0, 1.0, 0.0), TENSOR)
    assert estimate.value == pytest.approx(t * t, abs=1e-8)


@pytest.mark.parametrize("name", FAMILIES)
def test_pair_correlator_symmetries(name):
    fam = KernelFamily.from_name(name)
    value = pair_correlator(fam, PairQuadratic(0.7, 3.1, 1.2), TENSOR).value
    assert pair_correlator(fam, PairQuadratic(3.1, 0.7, 1.2), TENSOR).value == pytest.approx(value, abs=1e-9)
    assert pair_correlator(fam, PairQuadratic(0.7, 3.1, -1.2), TENSOR).value == pytest.approx(value, abs=1e-9)
    assert 0.0 < value <= 1.0


def test_rules_agree():
    q = PairQuadratic(0.4, 2.5, -0.9)
    for name in FAMILIES:
        fam = KernelFamily.from_name(name)
        tensor = pair_correlator(fam, q, TENSOR).value
        adaptive = pair_correlator(fam, q, ADAPTIVE).value
        assert tensor == pytest.approx(adaptive, abs=1e-7)


def test_atom_weight_mixes_constant_and_kernel():
    q = PairQuadratic(2.0, 1.0, 0.5)
    assert pair_correlator(KernelFamily.from_name("gauss-printed", atom_weight=1.0), q, TENSOR).value == 1.0
    c0 = -0.4
    w = 1.0 - abs(c0)
    mixed = pair_correlator(KernelFamily.from_name("gauss-printed", atom_weight=c0), q, TENSOR).value
    expected = c0 * c0 + c0 * w * (1 / np.sqrt(2.0) + 1 / np.sqrt(1.5)) + w * w * gaussian_closed_form(2.0, 1.0, 0.5)
    assert mixed == pytest.approx(expected, abs=1e-8)
    assert single_expectation(GAUSS, 2.0, TENSOR) == pytest.approx(1 / np.sqrt(2.0), abs=1e-10)


def test_bell_chsh_trivial_grams():
    zeros = GramMatrix(Hff=0.0, Hfpfp=0.0, Hgg=0.0, Hgpgp=0.0, Hfg=0.0, Hfpg=0.0, Hfgp=0.0, Hfpgp=0.0)
    result = bell_chsh(LORENTZ, zeros, TENSOR)
    assert result.value == pytest.approx(2.0, abs=1e-8)
    symmetric = GramMatrix(Hff=1.0, Hfpfp=1.0, Hgg=2.0, Hgpgp=2.0, Hfg=0.8, Hfpg=0.8, Hfgp=0.8, Hfpgp=0.8)
    result = bell_chsh(LORENTZ, symmetric, TENSOR)
    assert result.value == pytest.approx(2.0 * result.terms[0], rel=1e-12)
    assert result.value <= 2.0


def test_bell_result_combination_is_exact():
    result = tt_bell(LORENTZ, PUBLISHED, TENSOR)
    a, b, c, d = result.terms
    assert result.value == a + b + c - d
    assert all(0.0 < term <= 1.0 for term in result.terms)
    assert -1.0 < result.value < 3.0
    assert result.header() == BellResult.header()
    assert result.as_row()[-1] == "lorentz"


def test_tt_bell_is_bell_chsh_of_tt_gram():
    assert tt_bell(LORENTZ, PUBLISHED, TENSOR) == bell_chsh(LORENTZ, tt_gram(PUBLISHED), TENSOR)


def test_overlap_model_matches_closed_form_model():
    for name in FAMILIES:
        fam = KernelFamily.from_name(name)
        closed = tt_bell(fam, PUBLISHED, TENSOR).value
        parametrized = overlap_bell(fam, PUBLISHED, tt_overlaps(PUBLISHED.lam), TENSOR).value
        assert parametrized == pytest.approx(closed, rel=1e-9)


def test_factorizing_state_does_not_violate():
    for name in FAMILIES:
        result = tt_bell(KernelFamily.from_name(name), BellParams(1.0, 1.0, 1.0, 1.0, 0.0), TENSOR)
        assert result.value <= 2.0 + 1e-8


def test_published_parameters_by_both_rules():
    tensor = tt_bell(LORENTZ, PUBLISHED, TENSOR)
    adaptive = tt_bell(LORENTZ, PUBLISHED, ADAPTIVE)
    assert tensor.value == pytest.approx(adaptive.value, abs=1e-6)
    assert tensor.num_error < 1e-6


def test_sech_family_by_both_rules():
    sech = KernelFamily.from_name("sech")
    adaptive = tt_bell(sech, PUBLISHED, ADAPTIVE)
    assert adaptive.value == pytest.approx(tt_bell(sech, PUBLISHED, TENSOR).value, abs=1e-6)
    assert all(0.0 < term <= 1.0 for term in adaptive.terms)


def test_concurrent_terms_are_identical():
    sequential = tt_bell(LORENTZ, PUBLISHED, TENSOR)
    assert tt_bell(LORENTZ, PUBLISHED, replace(TENSOR, workers=4)) == sequential


def test_noisy_cross_entry_is_clipped():
    noisy = GramMatrix(
        Hff=1.0, Hfpfp=1.0, Hgg=1.0, Hgpgp=1.0, Hfg=1.0 + 1e-4, Hfpg=0.0, Hfgp=0.0, Hfpgp=0.0,
        errors=dict(Hfg=1e-4),
    )
    result = bell_chsh(GAUSS, noisy, TENSOR)
    assert result.terms[0] == pytest.approx(gaussian_closed_form(1.0, 1.0, 1.0), abs=1e-8)
    with pytest.raises(DomainError):
        bell_chsh(GAUSS, replace(noisy, Hfg=1.1), TENSOR)
