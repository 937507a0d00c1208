"""Scikit-learn style estimators wrapping the selection drivers.

Thin fit/predict adapters so the description-length selectors compose
with pipelines, grid search, and the rest of the ecosystem. The fitted
attributes follow the trailing-underscore convention; hyperparameters
are plain constructor arguments, so ``get_params``/``set_params`` and
cloning work out of the box.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_binary_sequence, as_real_sequence
from .regression import RegressionData, polyfit_ls, select_degree
from .selection import markov_candidate, select_markov_order

__all__ = ["MarkovOrderSelector", "PolynomialDegreeSelector"]


class MarkovOrderSelector(BaseEstimator):
    """Estimate the order of a binary Markov chain by codelength minimization.

    Parameters
    ----------
    max_order : int, default=5
        Largest order on the candidate menu (orders 0..max_order).
    code : str, default="bayes-jeffreys"
        Universal code used to score each order; see
        :data:`mdlselect.selection.MARKOV_CODE_KINDS`.

    Attributes
    ----------
    order_ : int
        Selected order.
    ranking_ : SelectionRanking
        Full menu ranking with per-order totals and the confidence gap.
    """

    def __init__(self, max_order: int = 5, code: str = "bayes-jeffreys"):
        self.max_order = max_order
        self.code = code

    def fit(self, X, y=None):
        x = as_binary_sequence(X)
        self.order_, self.ranking_ = select_markov_order(x, self.max_order, self.code)
        self.n_symbols_ = int(x.size)
        return self

    def score(self, X, y=None) -> float:
        """Negative bits per symbol of the selected order's code on ``X``."""
        check_is_fitted(self)
        x = as_binary_sequence(X)
        bits = markov_candidate(self.order_, self.code).codelength(x)
        return -bits / x.size


class PolynomialDegreeSelector(RegressorMixin, BaseEstimator):
    """Polynomial regressor whose degree is chosen by codelength minimization.

    Parameters
    ----------
    max_degree : int, default=6
        Largest candidate degree.
    code : str, default="plug-in"
        Scoring code: "plug-in", "two-part", or "asymptotic".
    variance_floor : float, default=1e-6
        Lower clamp on the ML noise variance.

    Attributes
    ----------
    degree_ : int
        Selected degree.
    coef_ : ndarray
        Coefficients of the least-squares refit at the selected degree,
        constant term first.
    sigma2_ : float
        Floored ML noise variance of that refit.
    ranking_ : SelectionRanking
        Full per-degree ranking.
    """

    def __init__(self, max_degree: int = 6, code: str = "plug-in", variance_floor: float = 1e-6):
        self.max_degree = max_degree
        self.code = code
        self.variance_floor = variance_floor

    def fit(self, X, y):
        x = as_real_sequence(np.asarray(X, dtype=float).ravel(), "X")
        y = as_real_sequence(y, "y")
        data = RegressionData(x=x, y=y)
        self.degree_, self.ranking_ = select_degree(
            data, self.max_degree, self.code, self.variance_floor
        )
        hyp = polyfit_ls(data, self.degree_, self.variance_floor)
        self.coef_ = hyp.coefficients
        self.sigma2_ = hyp.sigma2
        self.n_features_in_ = 1
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self)
        x = np.asarray(X, dtype=float).ravel()
        return np.polynomial.polynomial.polyval(x, self.coef_)
