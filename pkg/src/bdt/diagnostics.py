"""Screening-test calculus: predictive values, Bayes factors, belief updates."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .distributions import _check_probability
from .errors import DegenerateTestError, InfiniteEvidenceError
from .evidence import INFINITE_EVIDENCE, InfiniteEvidence


class TestResult(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    __test__ = False  # keep pytest from collecting this


@dataclass(frozen=True)
class DiagnosticTest:
    """A binary test applied to a population.

    sensitivity: P(test+ | disease)
    specificity: P(test- | no disease)
    prevalence:  P(disease), the prior before testing
    """

    sensitivity: float
    specificity: float
    prevalence: float

    __test__ = False

    def __post_init__(self):
        for name in ("sensitivity", "specificity", "prevalence"):
            object.__setattr__(self, name, _check_probability(name, getattr(self, name)))

    @property
    def false_positive_rate(self) -> float:
        return 1.0 - self.specificity

    @property
    def false_negative_rate(self) -> float:
        return 1.0 - self.sensitivity

    @property
    def informative(self) -> bool:
        return self.sensitivity + self.specificity > 1.0


def ppv(test: DiagnosticTest) -> float:
    """Positive predictive value, P(disease | test+).

    >>> round(ppv(DiagnosticTest(0.95, 0.98, 0.001)), 3)
    0.045
    """
    true_pos = test.sensitivity * test.prevalence
    false_pos = (1.0 - test.specificity) * (1.0 - test.prevalence)
    denom = true_pos + false_pos
    if denom == 0.0:
        raise DegenerateTestError("a positive result has probability 0 under this test")
    return true_pos / denom


def npv(test: DiagnosticTest) -> float:
    """Negative predictive value, P(no disease | test-)."""
    true_neg = test.specificity * (1.0 - test.prevalence)
    false_neg = (1.0 - test.sensitivity) * test.prevalence
    denom = false_neg + true_neg
    if denom == 0.0:
        raise DegenerateTestError("a negative result has probability 0 under this test")
    return true_neg / denom


def _ratio(num: float, den: float, what: str, allow_infinite: bool):
    if den > 0.0:
        return num / den
    if num == 0.0:
        raise DegenerateTestError(f"{what} is 0/0 for this test")
    if allow_infinite:
        return INFINITE_EVIDENCE
    raise InfiniteEvidenceError(f"{what} is infinite for this test", INFINITE_EVIDENCE)


def bayes_factor_positive(test: DiagnosticTest, *, allow_infinite: bool = False) -> float | InfiniteEvidence:
    """``P(test+ | disease) / P(test+ | no disease) = sens / (1 - spec)``.

    A perfectly specific test has no finite factor: by default that raises
    :class:`InfiniteEvidenceError`; with ``allow_infinite=True`` the typed
    :data:`INFINITE_EVIDENCE` value is returned instead.
    """
    return _ratio(test.sensitivity, 1.0 - test.specificity, "positive-result Bayes factor",
                  allow_infinite)


def bayes_factor_negative(test: DiagnosticTest, *, allow_infinite: bool = False) -> float | InfiniteEvidence:
    """``P(test- | disease) / P(test- | no disease) = (1 - sens) / spec``."""
    return _ratio(1.0 - test.sensitivity, test.specificity, "negative-result Bayes factor",
                  allow_infinite)


def posterior_from_test(test: DiagnosticTest, result: TestResult | str) -> tuple[float, float]:
    """(prior, posterior) probability of disease after observing ``result``."""
    result = TestResult(result)
    if result is TestResult.POSITIVE:
        return test.prevalence, ppv(test)
    return test.prevalence, 1.0 - npv(test)
