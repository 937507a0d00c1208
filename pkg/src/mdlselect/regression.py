"""Polynomial regression with Gaussian noise: codelengths and degree selection.

Conditional coding throughout: the regressor values are assumed known to
both ends of the channel, so only the responses are charged. Noise
variance is a free parameter, estimated by maximum likelihood per model
and clamped to a configurable floor so exact fits cannot produce
codelengths of -inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import as_real_sequence, check_non_negative_int
from .codelen import integer_codelength
from .models import LOG2E
from .selection import Candidate, SelectionRanking, select_model

__all__ = [
    "RegressionData",
    "PolynomialHypothesis",
    "RankDeficientDesignError",
    "VARIANCE_FLOOR",
    "polyfit_ls",
    "regression_codelength",
    "plugin_regression_steps",
    "select_degree",
    "REGRESSION_CODE_KINDS",
]

VARIANCE_FLOOR = 1e-6

REGRESSION_CODE_KINDS = ("two-part", "plug-in", "asymptotic")


class RankDeficientDesignError(ValueError):
    """Raised when the design matrix cannot support the requested degree."""


@dataclass(frozen=True)
class RegressionData:
    """Ordered (x, y) observation pairs; duplicate x-values are allowed."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_real_sequence(self.x, "x"))
        object.__setattr__(self, "y", as_real_sequence(self.y, "y"))
        if self.x.size != self.y.size:
            raise ValueError("x and y must have the same length")

    @property
    def n(self) -> int:
        return int(self.x.size)


@dataclass(frozen=True)
class PolynomialHypothesis:
    """Polynomial predictor plus its Gaussian noise variance.

    ``coefficients`` are ascending (constant term first); ``sigma2`` is
    the noise variance, never below the floor used to build it.
    ``sigma2_floored`` records whether the floor actually bound.
    """

    coefficients: np.ndarray
    sigma2: float
    sigma2_floored: bool = False

    def __post_init__(self) -> None:
        coef = np.asarray(self.coefficients, dtype=float).ravel()
        if coef.size == 0 or not np.all(np.isfinite(coef)):
            raise ValueError("coefficients must be a non-empty finite vector")
        object.__setattr__(self, "coefficients", coef)
        if not (self.sigma2 > 0):
            raise ValueError("sigma2 must be positive")

    @property
    def degree(self) -> int:
        return int(self.coefficients.size - 1)

    def predict(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        return np.polynomial.polynomial.polyval(arr, self.coefficients)


def _design(x: np.ndarray, degree: int) -> np.ndarray:
    return np.vander(x, degree + 1, increasing=True)


def polyfit_ls(data: RegressionData, degree: int, variance_floor: float = VARIANCE_FLOOR) -> PolynomialHypothesis:
    """Least-squares fit of the given degree, with ML noise variance.

    Solved through an orthogonal decomposition (numpy's lstsq), not the
    raw normal equations, so well-posed problems meet a 1e-8 relative
    normal-equation residual. Requires n >= degree + 2 (one spare point
    for the variance) and a full-rank design: fewer than degree + 1
    distinct x-values raise :class:`RankDeficientDesignError`.
    """
    degree = check_non_negative_int(degree, "degree")
    if data.n < degree + 2:
        raise ValueError(f"need at least degree + 2 = {degree + 2} points, got {data.n}")
    V = _design(data.x, degree)
    coef, _, rank, _ = np.linalg.lstsq(V, data.y, rcond=None)
    if rank < degree + 1:
        raise RankDeficientDesignError(
            f"design matrix has rank {rank} < {degree + 1}: "
            f"not enough distinct x-values for degree {degree}"
        )
    rss = float(np.sum((data.y - V @ coef) ** 2))
    sigma2 = rss / data.n
    floored = sigma2 < variance_floor
    return PolynomialHypothesis(
        coefficients=coef,
        sigma2=max(sigma2, variance_floor),
        sigma2_floored=floored,
    )


def regression_codelength(
    data: RegressionData,
    hypothesis: PolynomialHypothesis,
    variance_floor: float = VARIANCE_FLOOR,
) -> float:
    """Bits to encode the responses given the regressors under the hypothesis.

    log2(e) * RSS / (2 sigma^2) + (n/2) log2(2 pi sigma^2); density-based
    and therefore possibly negative on very sharp fits.
    """
    if hypothesis.sigma2 < variance_floor:
        raise ValueError(f"sigma2={hypothesis.sigma2} lies below the floor {variance_floor}")
    resid = data.y - hypothesis.predict(data.x)
    rss = float(np.sum(resid**2))
    n = data.n
    return LOG2E * rss / (2.0 * hypothesis.sigma2) + (n / 2.0) * math.log2(
        2.0 * math.pi * hypothesis.sigma2
    )


def _std_normal_bits(y: float) -> float:
    return LOG2E * y * y / 2.0 + 0.5 * math.log2(2.0 * math.pi)


def plugin_regression_steps(
    data: RegressionData,
    degree: int,
    variance_floor: float = VARIANCE_FLOOR,
) -> np.ndarray:
    """Per-outcome bits of the prequential plug-in code at one degree.

    The first degree + 2 responses (and any later step whose prefix
    cannot support a full-rank fit) are coded under a fixed standard
    Gaussian; every other response is coded under the least-squares fit
    to the preceding points with its floored ML variance. The code total
    is exactly the sum of these steps: the chain rule holds by
    construction.
    """
    degree = check_non_negative_int(degree, "degree")
    if data.n < degree + 2:
        raise ValueError(f"need at least degree + 2 = {degree + 2} points, got {data.n}")
    p = degree + 1
    V = _design(data.x, degree)
    gram = np.zeros((p, p))
    xty = np.zeros(p)
    yty = 0.0
    steps = np.empty(data.n)
    for i in range(data.n):
        yi = float(data.y[i])
        if i < degree + 2:
            steps[i] = _std_normal_bits(yi)
        else:
            row = V[i]
            try:
                coef = np.linalg.solve(gram, xty)
            except np.linalg.LinAlgError:
                # Degenerate prefix (duplicated x beyond the degree):
                # extend the start-up code to this step.
                steps[i] = _std_normal_bits(yi)
            else:
                rss = max(yty - float(xty @ coef), 0.0)
                sigma2 = max(rss / i, variance_floor)
                resid = yi - float(row @ coef)
                steps[i] = LOG2E * resid * resid / (2.0 * sigma2) + 0.5 * math.log2(
                    2.0 * math.pi * sigma2
                )
        gram += np.outer(V[i], V[i])
        xty += V[i] * yi
        yty += yi * yi
    return steps


def _coefficient_grid_bound(data: RegressionData, power: int) -> float:
    scale = max(1.0, float(np.max(np.abs(data.x))) ** power)
    return 2.0 * float(np.max(np.abs(data.y))) / scale


def _twopart_regression_bits(data: RegressionData, degree: int, variance_floor: float) -> float:
    """Order code + per-coefficient midpoint grids + quantized-fit codelength.

    Each LS coefficient is snapped to the nearest of m = ceil(sqrt(n))
    midpoints of its scale-aware feasible interval [-C_j, C_j]; the noise
    variance is then re-estimated (and floored) under the quantized
    coefficients.
    """
    hyp = polyfit_ls(data, degree, variance_floor)
    n = data.n
    m = math.ceil(math.sqrt(n))
    quantized = np.empty(degree + 1)
    for j, alpha in enumerate(hyp.coefficients):
        c = _coefficient_grid_bound(data, j)
        if c == 0.0:
            quantized[j] = 0.0
            continue
        cell = 2.0 * c / m
        idx = math.floor((alpha + c) / cell)
        idx = min(max(idx, 0), m - 1)
        quantized[j] = -c + (idx + 0.5) * cell
    resid = data.y - np.polynomial.polynomial.polyval(data.x, quantized)
    rss = float(np.sum(resid**2))
    sigma2 = max(rss / n, variance_floor)
    qhyp = PolynomialHypothesis(coefficients=quantized, sigma2=sigma2, sigma2_floored=rss / n < variance_floor)
    param_bits = integer_codelength(degree + 1) + (degree + 1) * math.log2(m)
    return param_bits + regression_codelength(data, qhyp, variance_floor)


def _asymptotic_regression_bits(data: RegressionData, degree: int, variance_floor: float) -> float:
    # Dimension term only: coefficients plus noise variance, degree + 2
    # free parameters; no Fisher-volume term without a design distribution.
    hyp = polyfit_ls(data, degree, variance_floor)
    fit = regression_codelength(data, hyp, variance_floor)
    return fit + ((degree + 2) / 2.0) * math.log2(data.n / (2.0 * math.pi))


def select_degree(
    data: RegressionData,
    max_degree: int,
    code: str = "plug-in",
    variance_floor: float = VARIANCE_FLOOR,
) -> tuple[int, SelectionRanking]:
    """Pick the polynomial degree in 0..max_degree minimizing the chosen code.

    Degrees are indexed with the standard integer code (degree k encoded
    as k + 1); candidates are always evaluated in degree order and ties
    break toward the lower degree.
    """
    max_degree = check_non_negative_int(max_degree, "max_degree")
    if max_degree + 2 > data.n:
        raise ValueError(f"max_degree={max_degree} needs at least {max_degree + 2} points, got {data.n}")
    code = {"plugin": "plug-in", "twopart": "two-part"}.get(code, code)
    if code not in REGRESSION_CODE_KINDS:
        raise ValueError(f"unknown regression code {code!r} (expected one of {REGRESSION_CODE_KINDS})")

    def scorer(degree: int):
        def codelength(_x) -> float:
            if code == "plug-in":
                return float(plugin_regression_steps(data, degree, variance_floor).sum())
            if code == "two-part":
                return _twopart_regression_bits(data, degree, variance_floor)
            return _asymptotic_regression_bits(data, degree, variance_floor)

        return codelength

    candidates = [Candidate(model=f"poly-{k}", codelength=scorer(k)) for k in range(max_degree + 1)]
    ranking = select_model(data.x, candidates, index_code="integer")
    return int(ranking.selected.split("-")[1]), ranking
