import math

import numpy as np
import pytest

from mdlselect.models import BERNOULLI, BinaryMarkovFamily
from mdlselect.oracle import (
    bit_matrix,
    enumerate_bayes,
    enumerate_family,
    expected_regret_lln_check,
    gaussian_interval_mass_formula,
    mc_gaussian_interval_mass,
)
from mdlselect.universal import PriorSpec


def test_bit_matrix_layout():
    bits = bit_matrix(2)
    assert bits.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


def test_enumerate_bernoulli_n2_hand_table():
    res = enumerate_family(BERNOULLI, 2)
    assert res.comp == pytest.approx(1.3219280948873624, abs=1e-12)
    assert res.nml_prob == pytest.approx([0.4, 0.1, 0.1, 0.4], abs=1e-12)
    assert res.kraft == pytest.approx(1.0, abs=1e-9)


def test_enumerate_bernoulli_n1_uniform():
    res = enumerate_family(BERNOULLI, 1)
    assert res.comp == pytest.approx(1.0, abs=1e-12)
    assert res.nml_prob == pytest.approx([0.5, 0.5], abs=1e-12)


def test_enumerate_markov_kraft():
    res = enumerate_family(BinaryMarkovFamily(1), 3)
    assert res.kraft == pytest.approx(1.0, abs=1e-9)


def test_enumeration_is_deterministic():
    a = enumerate_family(BinaryMarkovFamily(2), 8)
    b = enumerate_family(BinaryMarkovFamily(2), 8)
    assert np.array_equal(a.ml_bits, b.ml_bits)
    assert a.comp == b.comp


def test_enumeration_caps():
    with pytest.raises(ValueError):
        enumerate_family(BERNOULLI, 21)
    with pytest.raises(ValueError):
        enumerate_family(BinaryMarkovFamily(3), 3)


def test_enumerate_bayes_uniform_hand_values():
    marg = enumerate_bayes(BERNOULLI, PriorSpec.uniform(), 2)
    # index 0b01 = 1 is the sequence 01; 0b11 = 3 is 11
    assert marg[1] == pytest.approx(1.0 / 6.0, abs=1e-5)
    assert marg[3] == pytest.approx(1.0 / 3.0, abs=1e-5)


def test_enumerate_bayes_jeffreys_marginals_are_proper():
    for n in (1, 4, 9):
        marg = enumerate_bayes(BERNOULLI, PriorSpec.jeffreys(), n)
        assert marg.sum() == pytest.approx(1.0, abs=1e-5)


def test_enumerate_bayes_rejects_bad_prior_and_family():
    with pytest.raises(ValueError):
        enumerate_bayes(BERNOULLI, 0.0, 4)
    with pytest.raises(ValueError):
        enumerate_bayes(BinaryMarkovFamily(1), PriorSpec.uniform(), 4)


def test_mc_interval_mass_n1_exact():
    est = mc_gaussian_interval_mass(0.0, 1.0, 1.0, 1, samples=10**5, seed=0)
    assert est.estimate == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), abs=1e-15)
    assert est.std_error == 0.0


@pytest.mark.parametrize(
    "a, b, sigma, n, seed",
    [(0.0, 1.0, 1.0, 2, 11), (-1.0, 1.0, 2.0, 3, 12)],
)
def test_mc_interval_mass_matches_formula(a, b, sigma, n, seed):
    est = mc_gaussian_interval_mass(a, b, sigma, n, samples=2 * 10**5, seed=seed)
    target = gaussian_interval_mass_formula(a, b, sigma, n)
    assert est.std_error > 0
    assert abs(est.estimate - target) <= 4.0 * est.std_error


def test_mc_interval_mass_reproducible():
    a = mc_gaussian_interval_mass(0.0, 1.0, 1.0, 2, samples=10**5, seed=5)
    b = mc_gaussian_interval_mass(0.0, 1.0, 1.0, 2, samples=10**5, seed=5)
    assert a.estimate == b.estimate and a.std_error == b.std_error


def test_mc_interval_mass_preconditions():
    with pytest.raises(ValueError):
        mc_gaussian_interval_mass(1.0, 1.0, 1.0, 2)
    with pytest.raises(ValueError):
        mc_gaussian_interval_mass(0.0, 1.0, 1.0, 4)
    with pytest.raises(ValueError):
        mc_gaussian_interval_mass(0.0, 1.0, 1.0, 2, samples=10)


def test_lln_win_fraction_grows_with_n():
    # KL gap of about 0.19 bits/symbol: the better code wins essentially always
    big = expected_regret_lln_check(0.8, 0.8, 0.5, n=1000, trials=500, seed=21)
    small = expected_regret_lln_check(0.8, 0.8, 0.5, n=10, trials=500, seed=21)
    assert big >= 0.99
    assert small < big


def test_lln_identical_codes_tie_to_b():
    frac = expected_regret_lln_check(0.8, 0.5, 0.5, n=100, trials=400, seed=3)
    assert frac == 0.0  # ties broken toward B, and every trial ties


def test_lln_equal_expectation_splits_evenly():
    # Mirrored codes under a fair coin: equal expected length, no ties at
    # odd n, so each side wins about half the time.
    frac = expected_regret_lln_check(0.5, 0.3, 0.7, n=101, trials=2000, seed=9)
    assert 0.45 <= frac <= 0.55


def test_lln_rejects_misordered_codes():
    with pytest.raises(ValueError):
        expected_regret_lln_check(0.8, 0.5, 0.8, n=100)
