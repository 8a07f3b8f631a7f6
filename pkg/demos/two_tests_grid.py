"""
Two tests, two candidate accuracies
===================================

Test A reports 6 positives out of 10 known cases, test B 4 out of 7. Is the
shared hit rate 0.35 or 0.5? Equal prior weight on both.
"""

import math

from bdt import (Observation, ObservationModel, PriorGrid, classify_bf, log_likelihood, point_bayes_factor,
                 posterior)

prior = PriorGrid.from_pairs({0.35: 0.5, 0.5: 0.5})
model = ObservationModel([Observation.binomial(10, 6), Observation.binomial(7, 4)])

# the likelihood of both results is a product over conditionally independent tests
for theta in prior.thetas:
    print(f"L({theta}) = {math.exp(log_likelihood(model, theta)):.7f}")

table = posterior(prior, model)
print(f"marginal likelihood = {table.marginal_likelihood:.7f}")
for theta, p in zip(table.thetas, table.posterior):
    print(f"P(theta={theta} | data) = {p:.3f}")

# with equal priors the posterior odds are the Bayes factor
bf = point_bayes_factor(model, 0.5, 0.35)
print(f"BF(0.5 vs 0.35) = {bf:.3f}: {classify_bf(bf).describe()}")

# updating one test at a time gives the same answer
after_a = posterior(prior, ObservationModel(model.observations[:1]))
after_b = posterior(after_a.as_prior(), ObservationModel(model.observations[1:]))
print("sequential:", [round(p, 12) for p in after_b.posterior])
print("joint:     ", [round(p, 12) for p in table.posterior])
