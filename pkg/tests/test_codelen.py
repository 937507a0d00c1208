import math

import numpy as np
import pytest

from mdlselect.codelen import (
    bits_of_prob,
    expected_codelength,
    integer_codelength,
    kraft_sum,
    logsumexp2,
    uniform_codelength,
)


@pytest.mark.parametrize(
    "p, expected",
    [
        (0.5, 1.0),
        (1.0, 0.0),
        (0.25, 2.0),
        (0.1, 3.321928094887362),  # hand evaluation of -log2(0.1)
    ],
)
def test_bits_of_prob_values(p, expected):
    assert bits_of_prob(p) == pytest.approx(expected, abs=1e-12)


def test_bits_of_prob_zero_is_infinite():
    assert bits_of_prob(0.0) == math.inf


@pytest.mark.parametrize("p", [-0.1, 1.0000001, math.nan, math.inf])
def test_bits_of_prob_rejects_bad_input(p):
    with pytest.raises(ValueError):
        bits_of_prob(p)


def test_bits_of_prob_inverts_exponentiation():
    for bits in np.linspace(0.0, 40.0, 97):
        assert bits_of_prob(2.0**-bits) == pytest.approx(bits, abs=1e-12)


@pytest.mark.parametrize("k, expected", [(1, 1.0), (2, 3.0), (8, 7.0)])
def test_integer_codelength_values(k, expected):
    assert integer_codelength(k) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("k", [0, -1, 2.5])
def test_integer_codelength_rejects_nonpositive(k):
    with pytest.raises(ValueError):
        integer_codelength(k)


def test_integer_code_is_defective_for_every_truncation():
    # Partial Kraft sums approach (1/2) * pi^2/6 from below but never reach 1.
    for cap in (1, 10, 100, 1000):
        partial = kraft_sum([integer_codelength(k) for k in range(1, cap + 1)])
        assert partial < 1.0
    ks = np.arange(1, 10**6 + 1, dtype=float)
    partial = kraft_sum((2.0 * np.log2(ks) + 1.0).tolist())
    assert partial == pytest.approx(0.822466533424385, abs=1e-9)
    assert partial < math.pi**2 / 12.0 < 1.0


@pytest.mark.parametrize("m, expected", [(4, 2.0), (9, 3.169925001442312), (1, 0.0)])
def test_uniform_codelength_values(m, expected):
    assert uniform_codelength(m) == pytest.approx(expected, abs=1e-12)


def test_uniform_codelength_rejects_nonpositive():
    with pytest.raises(ValueError):
        uniform_codelength(0)


def test_kraft_sum_complete_and_defective():
    assert kraft_sum({"a": 1.0, "b": 2.0, "c": 2.0}) == pytest.approx(1.0, abs=1e-12)
    assert kraft_sum({"a": 1.0, "b": 2.0}) == pytest.approx(0.75, abs=1e-12)
    assert kraft_sum([1.0, math.inf]) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize(
    "terms, expected",
    [
        ([0.0, 0.0], 1.0),
        ([0.0, -2.0, -2.0, 0.0], 1.3219280948873624),  # log2(2.5) by direct sum
        ([-math.inf, 3.0], 3.0),
        ([-math.inf, -math.inf], -math.inf),
    ],
)
def test_logsumexp2_values(terms, expected):
    assert logsumexp2(terms) == pytest.approx(expected, abs=1e-12)


def test_logsumexp2_rejects_empty():
    with pytest.raises(ValueError):
        logsumexp2([])


def test_logsumexp2_matches_direct_sum_on_benign_inputs():
    rng = np.random.default_rng(1)
    for _ in range(50):
        terms = rng.uniform(-30, 10, size=rng.integers(1, 40))
        assert logsumexp2(terms) == pytest.approx(math.log2(np.sum(np.exp2(terms))), abs=1e-10)


def test_expected_codelength_values():
    assert expected_codelength((0.5, 0.5), (0.5, 0.5)) == pytest.approx(1.0, abs=1e-12)
    # uniform q costs one bit per symbol no matter what p is
    assert expected_codelength((0.7, 0.3), (0.5, 0.5)) == pytest.approx(1.0, abs=1e-12)
    # binary entropy of 0.7
    assert expected_codelength((0.7, 0.3), (0.7, 0.3)) == pytest.approx(0.8812908992306927, abs=1e-12)


def test_expected_codelength_rejects_mismatched_spaces():
    with pytest.raises(ValueError):
        expected_codelength((0.5, 0.5), (0.5, 0.25, 0.25))


def test_expected_codelength_rejects_improper_p():
    with pytest.raises(ValueError):
        expected_codelength((0.5, 0.4), (0.5, 0.5))


def test_information_inequality_on_grid():
    # Coding P-data with any wrong Q on the 0.05 grid costs strictly more.
    grid = np.round(np.arange(0.05, 1.0, 0.05), 10)
    for p1 in grid:
        p = (p1, 1.0 - p1)
        best = expected_codelength(p, p)
        for q1 in grid:
            if q1 == p1:
                continue
            assert expected_codelength(p, (q1, 1.0 - q1)) > best
