"""Model selection by the minimum description length principle.

Codelength accounting for Bernoulli, binary Markov, Gaussian-location,
and polynomial-regression families under exact NML, Bayes-mixture,
two-part, prequential plug-in, and asymptotic universal codes, plus a
brute-force oracle that re-derives every closed form at small scale.
"""

from .codelen import (
    bits_of_prob,
    expected_codelength,
    integer_codelength,
    kraft_sum,
    logsumexp2,
    uniform_codelength,
)
from .estimators import MarkovOrderSelector, PolynomialDegreeSelector
from .models import (
    BERNOULLI,
    BernoulliCounts,
    BinaryMarkovFamily,
    GaussianLocationModel,
    MarkovCounts,
    bernoulli_counts,
    bernoulli_ml,
    bernoulli_neg_loglik,
    fisher_bernoulli,
    fisher_root_integral,
    fisher_root_integral_log2,
    gaussian_location_neg_loglik,
    markov_counts,
    markov_ml,
    markov_neg_loglik,
)
from .regression import (
    PolynomialHypothesis,
    RankDeficientDesignError,
    RegressionData,
    plugin_regression_steps,
    polyfit_ls,
    regression_codelength,
    select_degree,
)
from .selection import (
    Candidate,
    SelectionRanking,
    markov_candidate,
    select_markov_order,
    select_model,
)
from .universal import (
    GridSpec,
    PriorSpec,
    UniversalCodeReport,
    bayes_bernoulli,
    bayes_markov,
    comp_asymptotic,
    comp_conditional_gaussian,
    comp_exact_bernoulli,
    comp_exact_markov,
    meta_twopart_gaussian,
    nml_codelength,
    plugin_codelength,
    twopart_codelength,
)

__version__ = "0.1.0"
