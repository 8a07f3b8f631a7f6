"""Bayes-factor evidence categories.

Two threshold conventions are supported.

Raw scale, on ``max(bf, 1/bf)``::

    [1, 3.2)    not worth more than a bare mention
    [3.2, 10)   substantial
    [10, 100)   strong
    [100, inf)  decisive

Log scale, on ``|2 ln bf|``::

    [0, 2)   [2, 6)   [6, 10)   [10, inf)

The log-scale table also lists rough raw equivalents (3 / 20 / 150). Those
are informational only, see :func:`log_table_bf_band`.

Intervals are half-open, so a Bayes factor of exactly 10 is *strong* on the
raw scale. A Bayes factor above 1 is evidence for the null hypothesis (the
numerator); below 1 the reciprocal is classified and the direction flips.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import InvalidParameterError


class Category(enum.IntEnum):
    NOT_WORTH_MENTION = 0
    SUBSTANTIAL = 1
    STRONG = 2
    DECISIVE = 3

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Category.NOT_WORTH_MENTION: "Not worth more than a bare mention",
    Category.SUBSTANTIAL: "Substantial",
    Category.STRONG: "Strong",
    Category.DECISIVE: "Decisive",
}


class Direction(enum.Enum):
    FOR_NULL = "for null"
    FOR_ALTERNATIVE = "for alternative"
    NEUTRAL = "neutral"


class Scale(enum.Enum):
    RAW = "raw"
    LOG = "log"


class InfiniteEvidence:
    """Bayes factor with a zero denominator: decisive evidence for the null.

    A distinct type rather than ``float('inf')`` so that it can never leak
    into arithmetic silently.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE_EVIDENCE"

    def __str__(self):
        return "inf"


INFINITE_EVIDENCE = InfiniteEvidence()

RAW_BOUNDARIES = (3.2, 10.0, 100.0)
LOG_BOUNDARIES = (2.0, 6.0, 10.0)
LOG_TABLE_BF_BOUNDARIES = (3.0, 20.0, 150.0)


@dataclass(frozen=True)
class EvidenceReport:
    bf: float | InfiniteEvidence
    two_ln_bf: float
    direction: Direction
    category: Category
    scale: Scale

    def describe(self) -> str:
        if self.direction is Direction.NEUTRAL:
            return f"{self.category.label} (neutral)"
        return f"{self.category.label} ({self.direction.value})"


def _check_bf(bf) -> float | InfiniteEvidence:
    if bf is INFINITE_EVIDENCE:
        return bf
    try:
        value = float(bf)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"Bayes factor must be a positive number, got {bf!r}") from None
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidParameterError(f"Bayes factor must be positive and finite, got {bf!r}")
    return value


def _direction(bf: float) -> Direction:
    if bf > 1.0:
        return Direction.FOR_NULL
    if bf < 1.0:
        return Direction.FOR_ALTERNATIVE
    return Direction.NEUTRAL


def _band(value: float, boundaries: tuple[float, float, float]) -> Category:
    return Category(bisect_right(boundaries, value))


def classify_bf(bf) -> EvidenceReport:
    """Classify on the raw scale.

    >>> classify_bf(47.5).describe()
    'Strong (for null)'
    """
    bf = _check_bf(bf)
    if bf is INFINITE_EVIDENCE:
        return EvidenceReport(bf, math.inf, Direction.FOR_NULL, Category.DECISIVE, Scale.RAW)
    magnitude = bf if bf >= 1.0 else 1.0 / bf
    return EvidenceReport(bf, 2.0 * math.log(bf), _direction(bf),
                          _band(magnitude, RAW_BOUNDARIES), Scale.RAW)


def classify_2ln_bf(bf) -> EvidenceReport:
    """Classify on the ``2 ln(bf)`` scale."""
    bf = _check_bf(bf)
    if bf is INFINITE_EVIDENCE:
        return EvidenceReport(bf, math.inf, Direction.FOR_NULL, Category.DECISIVE, Scale.LOG)
    two_ln = 2.0 * math.log(bf)
    return EvidenceReport(bf, two_ln, _direction(bf), _band(abs(two_ln), LOG_BOUNDARIES), Scale.LOG)


def log_table_bf_band(bf) -> Category:
    """Band of ``max(bf, 1/bf)`` in the raw column of the log-scale table (3/20/150)."""
    bf = _check_bf(bf)
    if bf is INFINITE_EVIDENCE:
        return Category.DECISIVE
    return _band(bf if bf >= 1.0 else 1.0 / bf, LOG_TABLE_BF_BOUNDARIES)
