"""Universal codes over the binary families, and parametric complexity.

Four ways to encode a sequence almost as well as the best distribution
in a model chosen with hindsight: the minimax-optimal normalized
maximum likelihood code, the Bayes mixture (Beta closed forms), two-part
codes over crude and refined parameter grids, and the prequential
plug-in code. The Gaussian location family gets the conditional-NML
complexity plus the hybrid two-part repair of its otherwise infinite
complexity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.special import betaln, gammaln

from ._validation import (
    as_binary_sequence,
    as_real_sequence,
    check_non_negative_int,
    check_positive,
    check_positive_int,
)
from .codelen import integer_codelength, logsumexp2
from .models import (
    BernoulliCounts,
    BinaryMarkovFamily,
    MarkovCounts,
    bernoulli_neg_loglik,
    gaussian_location_neg_loglik,
    markov_counts,
)

__all__ = [
    "UniversalCodeReport",
    "PriorSpec",
    "GridSpec",
    "comp_exact_bernoulli",
    "comp_exact_markov",
    "nml_codelength",
    "comp_asymptotic",
    "bayes_bernoulli",
    "bayes_markov",
    "plugin_codelength",
    "twopart_codelength",
    "comp_conditional_gaussian",
    "meta_twopart_gaussian",
]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class UniversalCodeReport:
    """Per-(model, code) record: data fit, complexity/regret term, total bits.

    For codes that decompose (NML, two-part, meta-two-part) the total is
    exactly data_fit + complexity. ``flags`` carries warnings such as
    "asymptotic" or "boundary-ml"; ``details`` carries code-specific
    extras (grid size, chosen bound, ...).
    """

    model: str
    code: str
    data_fit: float
    complexity: float
    total: float
    flags: tuple[str, ...] = ()
    details: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class PriorSpec:
    """Symmetric Beta prior, parameterized by its virtual count lam > 0.

    lam = 1 is the uniform prior, lam = 1/2 the Jeffreys prior; both are
    also the smoothing constants of the matching sequential estimator
    (n1 + lam) / (n + 2 lam).
    """

    kind: str
    lam: float

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "jeffreys", "virtual-count"):
            raise ValueError(f"unknown prior kind {self.kind!r}")
        check_positive(self.lam, "lam")

    @classmethod
    def uniform(cls) -> "PriorSpec":
        return cls(kind="uniform", lam=1.0)

    @classmethod
    def jeffreys(cls) -> "PriorSpec":
        return cls(kind="jeffreys", lam=0.5)

    @classmethod
    def virtual(cls, lam: float) -> "PriorSpec":
        return cls(kind="virtual-count", lam=float(lam))


def comp_exact_bernoulli(n: int) -> float:
    """Parametric complexity of the Bernoulli family at sample size n, exactly.

    log2 of sum_j C(n, j) (j/n)^j ((n-j)/n)^(n-j): the sum over all
    sequences of their maximized likelihood, grouped by count. Evaluated
    in the log domain with log-gamma binomials, so it stays exact-
    combinatorial up to n of a million and beyond.
    """
    n = check_positive_int(n, "n")
    j = np.arange(n + 1, dtype=float)
    log_binom = gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ml = np.where(j > 0, j * np.log(j / n), 0.0) + np.where(j < n, (n - j) * np.log(1.0 - j / n), 0.0)
    return logsumexp2((log_binom + ml) / LN2)


def comp_exact_markov(n: int, k: int) -> float:
    """Parametric complexity of the order-k binary chains by full enumeration.

    Delegates to the enumeration oracle (cap n <= 20); the maximized
    likelihood of each sequence includes the k start bits, so the value
    for k = 0 must agree with :func:`comp_exact_bernoulli`.
    """
    from . import oracle  # local import: oracle cross-checks this module

    k = check_non_negative_int(k, "k")
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    return oracle.enumerate_family(BinaryMarkovFamily(order=k), n).comp


def nml_codelength(x, family: BinaryMarkovFamily, comp: float) -> UniversalCodeReport:
    """Stochastic complexity report: ML data fit plus parametric complexity.

    ``comp`` must have been computed for this family at this sample
    size; the total then equals -log2 of the normalized maximum
    likelihood of ``x`` exactly, and total - data_fit is the same for
    every sequence.
    """
    arr = as_binary_sequence(x)
    if arr.size <= family.order:
        raise ValueError("sequence too short for this family")
    data_fit = family.ml_codelength(arr)
    flags = ()
    ml = family.ml_estimate(arr)
    if any(v in (0.0, 1.0) for v in ml.values()):
        flags = ("boundary-ml",)
    return UniversalCodeReport(
        model=family.identifier,
        code="nml-exact",
        data_fit=data_fit,
        complexity=float(comp),
        total=data_fit + float(comp),
        flags=flags,
    )


def comp_asymptotic(
    k: int,
    n: int,
    fisher_integral: float | None = None,
    *,
    log2_fisher_integral: float | None = None,
) -> float:
    """Leading terms (k/2) log2(n / 2 pi) + log2(integral of sqrt Fisher).

    The vanishing remainder is dropped, so the value is a labelled
    approximation: callers must surface an "asymptotic" flag and must
    not substitute it where an exact value is required. The Fisher-root
    integral may be passed in the log2 domain for high-dimensional
    families whose product value overflows a float.
    """
    k = check_positive_int(k, "k")
    n = check_positive_int(n, "n")
    if (fisher_integral is None) == (log2_fisher_integral is None):
        raise ValueError("pass exactly one of fisher_integral, log2_fisher_integral")
    if fisher_integral is not None:
        check_positive(fisher_integral, "fisher_integral")
        log2_fisher_integral = math.log2(fisher_integral)
    return (k / 2.0) * math.log2(n / (2.0 * math.pi)) + float(log2_fisher_integral)


def bayes_bernoulli(c: BernoulliCounts, prior: PriorSpec) -> float:
    """-log2 of the Beta mixture marginal B(n1+lam, n0+lam) / B(lam, lam).

    Equals the telescoped product of lam-smoothed sequential predictions,
    which :func:`plugin_codelength` computes along the other route.
    """
    lam = prior.lam
    return -(betaln(c.n1 + lam, c.n0 + lam) - betaln(lam, lam)) / LN2


def bayes_markov(c: MarkovCounts, prior: PriorSpec) -> float:
    """Mixture codelength of a Markov sample: start cost plus per-context marginals.

    The transition likelihood factorizes over contexts, so the mixture
    against independent per-context priors is the product of Bernoulli
    marginals; the k start bits are charged as in every other code here.
    """
    bits = float(c.order)
    for _, (c0, c1) in c.counts.items():
        bits += bayes_bernoulli(BernoulliCounts(n1=c1, n0=c0), prior)
    return bits


def plugin_codelength(x, k: int, lam: float) -> float:
    """Prequential plug-in codelength with the lam-smoothed estimator.

    Each symbol after the k start bits is charged against the prediction
    (n1 + lam) / (n + 2 lam) built from counts over the preceding symbols
    in the same context. With no observations and lam = 0 the prediction
    falls back to 1/2 (the lam -> 0 limit); lam = 0 can still charge
    +inf, which is a valid return: the bare ML plug-in is not universal.
    """
    k = check_non_negative_int(k, "k")
    lam = float(lam)
    if lam < 0:
        raise ValueError("lam must be >= 0")
    arr = as_binary_sequence(x)
    n = arr.size
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    ones = np.zeros(2**k, dtype=np.int64)
    totals = np.zeros(2**k, dtype=np.int64)
    bits = float(k)
    ctx = 0
    mask = 2**k - 1
    if k:
        for j in range(k):
            ctx = (ctx << 1) | int(arr[j])
    for t in range(k, n):
        num = ones[ctx] + lam
        den = totals[ctx] + 2.0 * lam
        p1 = 0.5 if den == 0.0 else num / den
        b = int(arr[t])
        p = p1 if b else 1.0 - p1
        bits += math.inf if p <= 0.0 else -math.log2(p)
        ones[ctx] += b
        totals[ctx] += 1
        ctx = ((ctx << 1) & mask) | b if k else 0
    return bits


@dataclass(frozen=True)
class GridSpec:
    """Parameter discretization for the two-part code.

    mode "crude" uses the count grid {0, 1/n, ..., n/n} (n+1 points per
    parameter, the finest grid that can hold an ML estimate); mode
    "refined" uses ``points`` midpoints {(2i-1)/(2m)}, defaulting to
    m = ceil(sqrt(n)), the coarser spacing that shortens the parameter
    part faster than it hurts the fit.
    """

    mode: str = "refined"
    points: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("crude", "refined"):
            raise ValueError(f"unknown grid mode {self.mode!r}")
        if self.points is not None and self.points < 1:
            raise ValueError("grid must have at least one point per parameter")

    def resolve_points(self, n: int) -> int:
        if self.points is not None:
            return self.points
        return n + 1 if self.mode == "crude" else math.ceil(math.sqrt(n))


def _crude_theta(ml: float, n: int) -> float:
    # Nearest multiple of 1/n, half-up: deterministic, and never snaps a
    # strictly interior context frequency onto the boundary.
    return math.floor(ml * n + 0.5) / n


def twopart_codelength(x, k: int, grid: GridSpec | None = None) -> UniversalCodeReport:
    """Two-part codelength: order index + parameter grid + data given parameters.

    The order k is encoded as the integer k + 1 under the standard
    integer code (order 0 must be encodable). Crude mode pays
    2**k * log2(n+1) for count-valued parameters and codes the data at
    the grid point nearest each context's ML; refined mode pays
    2**k * log2(m) over the midpoint grid and minimizes the data term
    per context. The data term includes the k start bits, so the total
    is a complete, self-contained code for the sequence.
    """
    k = check_non_negative_int(k, "k")
    grid = grid or GridSpec()
    arr = as_binary_sequence(x)
    n = arr.size
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    c = markov_counts(arr, k)
    m = grid.resolve_points(n)
    complexity = integer_codelength(k + 1) + (2**k) * math.log2(m)
    data_fit = float(k)
    if grid.mode == "crude":
        for _, (c0, c1) in c.counts.items():
            theta = _crude_theta(c1 / (c0 + c1), n)
            data_fit += bernoulli_neg_loglik(BernoulliCounts(n1=c1, n0=c0), theta)
    else:
        thetas = (2.0 * np.arange(1, m + 1) - 1.0) / (2.0 * m)
        with np.errstate(divide="ignore"):
            cost1 = -np.log2(thetas)
            cost0 = -np.log2(1.0 - thetas)
        for _, (c0, c1) in c.counts.items():
            costs = c1 * cost1 + c0 * cost0
            data_fit += float(np.min(costs))
    return UniversalCodeReport(
        model=BinaryMarkovFamily(order=k).identifier,
        code="two-part",
        data_fit=data_fit,
        complexity=complexity,
        total=data_fit + complexity,
        details={"mode": grid.mode, "grid_points": m},
    )


def comp_conditional_gaussian(K: float, n: int, sigma: float) -> float:
    """Complexity of the Gaussian location family conditioned on |mean| <= K.

    log2 K + (1/2) log2(n / 2 pi) - log2 sigma + 1; exact, because the
    maximized-likelihood mass of an interval of means is proportional to
    its width. May legitimately be negative for tiny n.
    """
    K = check_positive(K, "K")
    sigma = check_positive(sigma, "sigma")
    n = check_positive_int(n, "n")
    return math.log2(K) + 0.5 * math.log2(n / (2.0 * math.pi)) - math.log2(sigma) + 1.0


def meta_twopart_gaussian(x, sigma: float) -> UniversalCodeReport:
    """Hybrid code for the Gaussian location family with unbounded mean.

    Encodes a bound K = 2**j on the sample mean (j >= 1 under the
    standard integer code) and then the data under the conditional-NML
    code for |mean| <= K. Both terms grow with j, so the search settles
    on the smallest power of two covering max(|mean|, 2). The report's
    complexity is the achieved regret; it stays within an additive
    2 log2(.) + 3 of the best bound-with-hindsight.
    """
    sigma = check_positive(sigma, "sigma")
    arr = as_real_sequence(x, "x")
    mu_hat = float(arr.mean())
    n = arr.size
    target = max(abs(mu_hat), 2.0)
    j_min = max(1, math.ceil(math.log2(target)))
    # Objective is strictly increasing in j; scan a short feasible window
    # anyway so the reported minimum is explicit.
    best_j, best_regret = None, math.inf
    for j in range(j_min, j_min + 4):
        regret = integer_codelength(j) + comp_conditional_gaussian(2.0**j, n, sigma)
        if regret < best_regret:
            best_j, best_regret = j, regret
    data_fit = gaussian_location_neg_loglik(arr, mu_hat, sigma)
    return UniversalCodeReport(
        model=f"gaussian-location(sigma={sigma:g})",
        code="meta-two-part",
        data_fit=data_fit,
        complexity=best_regret,
        total=data_fit + best_regret,
        details={"chosen_K": 2.0**best_j, "chosen_j": best_j, "regret": best_regret},
    )
