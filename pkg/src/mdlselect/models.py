"""Parametric model families over binary sequences and real samples.

Bernoulli and k-th order binary Markov chains (with their sufficient
counts, ML estimators, and Fisher information) plus the fixed-variance
Gaussian location family. All likelihood values are reported as base-2
codelengths.

Markov convention: a k-th order chain conditions each symbol on the k
symbols immediately preceding it. The first k symbols are not modelled
by the transition parameters; they are charged ``start_cost`` bits
(default: k, one bit per symbol under the fixed-length code), which is
constant across all chains of the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy import integrate

from ._validation import (
    as_binary_sequence,
    as_real_sequence,
    check_non_negative_int,
    check_positive,
    check_probability,
)

__all__ = [
    "BernoulliCounts",
    "MarkovCounts",
    "BinaryMarkovFamily",
    "GaussianLocationModel",
    "bernoulli_counts",
    "bernoulli_neg_loglik",
    "bernoulli_ml",
    "markov_counts",
    "markov_ml",
    "markov_neg_loglik",
    "fisher_bernoulli",
    "fisher_root_integral",
    "fisher_root_integral_log2",
    "gaussian_location_neg_loglik",
]

LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class BernoulliCounts:
    """Symbol tallies (number of ones, number of zeros) of a binary sample."""

    n1: int
    n0: int

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n0 < 0:
            raise ValueError("counts must be non-negative")
        if self.n1 + self.n0 < 1:
            raise ValueError("counts must cover at least one symbol")

    @property
    def n(self) -> int:
        return self.n1 + self.n0


@dataclass(frozen=True)
class MarkovCounts:
    """Per-context transition tallies of a binary sequence under order ``k``.

    ``counts`` maps each context (a k-character '0'/'1' string, oldest
    symbol first) that actually occurs to its ``(zeros, ones)`` follow-up
    tallies; contexts absent from the mapping were never visited.
    ``start`` is the first k symbols, which the transition parameters do
    not model.
    """

    order: int
    counts: Mapping[str, tuple[int, int]]
    start: str

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.start) != self.order:
            raise ValueError("start must hold exactly `order` symbols")
        for ctx, (c0, c1) in self.counts.items():
            if len(ctx) != self.order:
                raise ValueError(f"context {ctx!r} does not have length {self.order}")
            if c0 < 0 or c1 < 0 or c0 + c1 == 0:
                raise ValueError(f"invalid tallies for context {ctx!r}")

    @property
    def n_transitions(self) -> int:
        return sum(c0 + c1 for c0, c1 in self.counts.values())


def bernoulli_counts(x) -> BernoulliCounts:
    """Tally ones and zeros of a binary sequence (n >= 1)."""
    arr = as_binary_sequence(x)
    n1 = int(arr.sum())
    return BernoulliCounts(n1=n1, n0=int(arr.size) - n1)


def bernoulli_ml(c: BernoulliCounts) -> float:
    """ML estimate n1/n of the success probability; may sit on the boundary."""
    return c.n1 / c.n


def bernoulli_neg_loglik(c: BernoulliCounts, theta: float) -> float:
    """-log2 likelihood of the counts under success probability ``theta``.

    Conventions: 0 * log 0 = 0; a positive count against a zero
    probability yields +inf.
    """
    theta = check_probability(theta, "theta")
    bits = 0.0
    if c.n1:
        bits += math.inf if theta == 0.0 else -c.n1 * math.log2(theta)
    if c.n0:
        bits += math.inf if theta == 1.0 else -c.n0 * math.log2(1.0 - theta)
    return bits


def _context_codes(bits: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer context codes and next symbols for the n-k transitions.

    Context code treats the oldest of the k symbols as the most
    significant bit, matching the '0'/'1' context strings.
    """
    n = bits.size
    targets = bits[k:].astype(np.int64)
    if k == 0:
        return np.zeros(n, dtype=np.int64), targets
    powers = (1 << np.arange(k - 1, -1, -1)).astype(np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(bits.astype(np.int64), k)
    codes = windows[: n - k] @ powers
    return codes, targets


def _code_to_context(code: int, k: int) -> str:
    return format(code, f"0{k}b") if k else ""


def markov_counts(x, k: int) -> MarkovCounts:
    """Per-context transition tallies over positions k+1..n (requires n > k)."""
    k = check_non_negative_int(k, "k")
    arr = as_binary_sequence(x)
    n = arr.size
    if n <= k:
        raise ValueError(f"sequence of length {n} cannot support order {k} (need n > k)")
    codes, targets = _context_codes(arr, k)
    joint = np.bincount(codes * 2 + targets, minlength=2 ** (k + 1))
    counts = {}
    for code in range(2**k):
        c0, c1 = int(joint[2 * code]), int(joint[2 * code + 1])
        if c0 + c1:
            counts[_code_to_context(code, k)] = (c0, c1)
    start = "".join(str(int(b)) for b in arr[:k])
    return MarkovCounts(order=k, counts=counts, start=start)


def markov_ml(c: MarkovCounts) -> dict[str, float]:
    """ML table theta(1|context) = n_ctx1 / n_ctx over the visited contexts.

    Unvisited contexts are absent from the result (there is no evidence
    to estimate them from), mirroring their absence in ``c.counts``.
    """
    return {ctx: c1 / (c0 + c1) for ctx, (c0, c1) in c.counts.items()}


def markov_neg_loglik(
    x,
    k: int,
    theta: Mapping[str, float],
    start_cost: float | None = None,
) -> float:
    """-log2 likelihood of ``x`` under a transition table, plus the start cost.

    ``theta`` maps contexts to P(next = 1 | context) and must cover every
    context occurring in ``x``. ``start_cost`` defaults to k bits (the
    first k symbols under the fixed-length code).
    """
    k = check_non_negative_int(k, "k")
    c = markov_counts(x, k)
    if start_cost is None:
        start_cost = float(k)
    if start_cost < 0:
        raise ValueError("start_cost must be >= 0")
    bits = float(start_cost)
    for ctx, (c0, c1) in c.counts.items():
        if ctx not in theta:
            raise ValueError(f"transition table is missing context {ctx!r}")
        bits += bernoulli_neg_loglik(BernoulliCounts(n1=c1, n0=c0), theta[ctx])
    return bits


def fisher_bernoulli(theta: float) -> float:
    """Fisher information 1/(theta (1 - theta)) of the Bernoulli family.

    The expected second derivative of the negative log-likelihood (in
    nats); diverges at the boundary, so theta must lie strictly inside
    (0, 1).
    """
    theta = check_probability(theta, "theta")
    if theta == 0.0 or theta == 1.0:
        raise ValueError("Fisher information diverges at the boundary theta in {0, 1}")
    return 1.0 / (theta * (1.0 - theta))


@dataclass(frozen=True)
class BinaryMarkovFamily:
    """Binary Markov chains of a fixed order (order 0 = Bernoulli).

    The family has 2**order free parameters, one conditional success
    probability per context, each ranging over [0, 1].
    """

    order: int = 0

    def __post_init__(self) -> None:
        check_non_negative_int(self.order, "order")

    @property
    def identifier(self) -> str:
        return "bernoulli" if self.order == 0 else f"markov-{self.order}"

    @property
    def dimension(self) -> int:
        return 2**self.order

    @property
    def parameter_space(self) -> str:
        return f"conditional success probabilities in [0,1]^{self.dimension}"

    def ml_estimate(self, x) -> dict[str, float]:
        return markov_ml(markov_counts(x, self.order))

    def ml_codelength(self, x) -> float:
        """-log2 of the maximized likelihood, start cost included."""
        c = markov_counts(x, self.order)
        bits = float(self.order)
        for _, (c0, c1) in c.counts.items():
            t = c0 + c1
            if c0:
                bits -= c0 * math.log2(c0 / t)
            if c1:
                bits -= c1 * math.log2(c1 / t)
        return bits

    def fisher(self, theta: float) -> float:
        """Fisher information of one per-context factor."""
        return fisher_bernoulli(theta)


BERNOULLI = BinaryMarkovFamily(order=0)


def fisher_root_integral(family: BinaryMarkovFamily, method: str = "exact") -> float:
    """Integral of sqrt(Fisher information) over the parameter space.

    For one Bernoulli factor the substitution theta = sin^2(u) turns the
    integrand into the constant 2 on (0, pi/2), so the integral is
    exactly pi; an order-m chain factorizes into 2**m independent
    Bernoulli factors, giving pi**(2**m). ``method="quadrature"`` checks
    the per-factor value by adaptive quadrature on the substituted
    integrand (endpoint singularities removed; the argument is clipped
    1e-8 away from the boundary), raising if the estimate is not
    trustworthy to 1e-6 relative.
    """
    if method not in ("exact", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact":
        factor = math.pi
    else:
        eps = 1e-8

        def integrand(u: float) -> float:
            theta = min(max(math.sin(u) ** 2, eps), 1.0 - eps)
            return math.sqrt(family.fisher(theta)) * math.sin(2.0 * u)

        factor, abserr = integrate.quad(integrand, 0.0, math.pi / 2, epsrel=1e-9, limit=200)
        if abserr > 1e-6 * abs(factor):
            raise ValueError(f"quadrature did not converge to 1e-6 relative (abserr={abserr})")
    log2_value = family.dimension * math.log2(factor)
    if log2_value > 1020.0:
        raise OverflowError(
            "Fisher-root integral overflows a float for this dimension; "
            "use fisher_root_integral_log2"
        )
    return factor**family.dimension


def fisher_root_integral_log2(family: BinaryMarkovFamily) -> float:
    """log2 of :func:`fisher_root_integral`, safe for high-order chains.

    Stored as (number of contexts) * log2(per-factor value) so the
    product over contexts never leaves the log domain.
    """
    return family.dimension * math.log2(math.pi)


@dataclass(frozen=True)
class GaussianLocationModel:
    """Gaussian family with known standard deviation and free mean."""

    sigma: float

    def __post_init__(self) -> None:
        check_positive(self.sigma, "sigma")


def gaussian_location_neg_loglik(x, mu: float, sigma: float) -> float:
    """Density-based codelength of real samples under N(mu, sigma^2), in bits.

    log2(e) * sum((x - mu)^2) / (2 sigma^2) + (n/2) log2(2 pi sigma^2);
    values are codelengths at unit precision and may be negative.
    """
    sigma = check_positive(sigma, "sigma")
    arr = as_real_sequence(x, "x")
    mu = float(mu)
    rss = float(np.sum((arr - mu) ** 2))
    n = arr.size
    return LOG2E * rss / (2.0 * sigma**2) + (n / 2.0) * math.log2(2.0 * math.pi * sigma**2)
