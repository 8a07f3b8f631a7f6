"""Discrete Bayesian inference for clinical-trial design calculations.

Submodules:

* :mod:`bdt.distributions` -- uniform, binomial, Poisson, negative binomial
* :mod:`bdt.probability` -- conditional probability, total probability, Bayes, odds
* :mod:`bdt.diagnostics` -- PPV/NPV and Bayes factors of screening tests
* :mod:`bdt.grid` -- grid posteriors over a discrete parameter
* :mod:`bdt.evidence` -- Bayes-factor evidence categories
* :mod:`bdt.estimation` -- binomial maximum likelihood
* :mod:`bdt.network` -- seeded random DAGs and prior-strength convergence curves
* :mod:`bdt.fixtures` -- golden reference values behind ``bdt paper-fixtures``
"""

from .diagnostics import DiagnosticTest, bayes_factor_negative, bayes_factor_positive, npv, posterior_from_test, ppv
from .distributions import (
    Binomial,
    DiscreteUniform,
    NegativeBinomial,
    Poisson,
    binomial_moments,
    binomial_pmf,
    negbinom_moments,
    negbinom_pmf,
    poisson_approx_tv,
    poisson_pmf,
    uniform_moments,
    uniform_pmf,
)
from .estimation import MleResult, binomial_mle_closed, binomial_mle_numeric, grid_map_equals_mle
from .evidence import INFINITE_EVIDENCE, Category, Direction, EvidenceReport, classify_2ln_bf, classify_bf
from .grid import (
    Observation,
    ObservationModel,
    PosteriorTable,
    PriorGrid,
    log_likelihood,
    marginal_likelihood,
    nearest_grid_estimate,
    point_bayes_factor,
    posterior,
    posterior_mean,
    posterior_mode,
)
from .network import Dag, converge, convergence_table, random_dag, topological_order, two_node_diagnostic_net
from .probability import (
    ContingencyTable,
    Partition,
    bayes_posterior,
    conditional_probability,
    odds,
    posterior_odds,
    table_conditional,
    total_probability,
)

__version__ = "0.1.0"
