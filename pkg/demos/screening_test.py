"""
How much does one positive screening test tell you?
===================================================

A test with 95% sensitivity and 98% specificity, applied where the
condition affects one person in a thousand.
"""

from pathlib import Path

from bdt import (DiagnosticTest, bayes_factor_positive, classify_2ln_bf, classify_bf, npv, odds,
                 posterior_from_test, posterior_odds, ppv)
from bdt.reporting import prior_posterior_bars

test = DiagnosticTest(sensitivity=0.95, specificity=0.98, prevalence=0.001)

# the positive predictive value is small because true cases are rare
print(f"P(disease | positive) = {ppv(test):.4f}")
print(f"P(healthy | negative) = {npv(test):.6f}")

# the same update in odds form: prior odds times the Bayes factor
bf = bayes_factor_positive(test)
print(f"Bayes factor          = {bf:.1f}")
print(f"posterior odds        = {posterior_odds(odds(test.prevalence), bf):.4f}")

# the factor itself is strong evidence; the posterior stays low
print(classify_bf(bf).describe(), "|", classify_2ln_bf(bf).describe(), "on the 2 ln scale")

# prevalence matters far more than the test
for prev in (0.001, 0.01, 0.1, 0.5):
    t = DiagnosticTest(0.95, 0.98, prev)
    print(f"  prevalence {prev:>5}: ppv {ppv(t):.3f}")

out = Path("demo_output")
out.mkdir(exist_ok=True)
prior, post = posterior_from_test(test, "positive")
prior_posterior_bars(out / "screening_bars.svg", prior, post)
print("wrote", out / "screening_bars.svg")
