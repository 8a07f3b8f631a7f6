"""
Waiting for a compatible donor
==============================

Seven incompatible donations arrive before the first match. Is the match
rate 0.2 or 0.1? The answer depends on the prior, and this script shows how.
"""

import numpy as np

from bdt import NegativeBinomial, Observation, ObservationModel, PriorGrid, posterior

model = ObservationModel([Observation.negbinomial(kappa=1, m=7)])

# seven failures before one success is a geometric observation
for rate in (0.1, 0.2):
    print(f"P(7 failures | rate {rate}) = {NegativeBinomial(1, rate).pmf(7):.6f}")

for w in (0.25, 0.5):
    table = posterior(PriorGrid.from_pairs({0.2: w, 0.1: 1 - w}), model)
    print(f"prior P(0.2)={w:.2f} -> posterior {table[0.2]:.3f}, marginal {table.marginal_likelihood:.7f}")

# sweep the prior weight: the data shift every prior by the same Bayes factor
print("\nprior   posterior")
for w in np.linspace(0.05, 0.95, 7):
    table = posterior(PriorGrid.from_pairs({0.2: w, 0.1: 1 - w}), model)
    print(f"{w:5.2f}   {table[0.2]:.3f}")
