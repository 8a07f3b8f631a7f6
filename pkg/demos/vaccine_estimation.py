"""
Estimating a response rate on a grid
====================================

Seven of ten vaccinated volunteers respond. A flat prior over the rates
0.1, 0.2, ..., 1.0 turns the likelihood into a posterior table.
"""

from bdt import (Observation, ObservationModel, PriorGrid, binomial_mle_closed, binomial_mle_numeric,
                 nearest_grid_estimate, posterior, posterior_mean, posterior_mode)
from bdt.reporting import posterior_csv

grid = PriorGrid.uniform([k / 10 for k in range(1, 11)])
table = posterior(grid, ObservationModel([Observation.binomial(10, 7)]))
print(posterior_csv(table))

# theta = 1.0 cannot produce three non-responders, so it keeps posterior 0
mode, p_mode = posterior_mode(table)
print(f"posterior mean {posterior_mean(table):.3f}, mode {mode} (mass {p_mode:.3f})")
print(f"mean snapped to the grid: {nearest_grid_estimate(table)}")

# a flat prior makes the mode a maximum-likelihood estimate on the grid
closed = binomial_mle_closed(7, 10)
numeric = binomial_mle_numeric(7, 10)
print(f"MLE closed form {closed.theta_hat}, golden section {numeric.theta_hat:.9f} "
      f"after {numeric.iterations} iterations")
