"""Event-level probability algebra.

Conditional probability, the law of total probability over a finite
partition, Bayes' theorem and the odds form of Bayes' theorem.

The scalar functions only use ``+ - * /`` and comparisons, so they accept
``fractions.Fraction`` as well as ``float``; exact inputs give exact
results (``0.8*0.9 + 0.2*0.1`` is exactly ``37/50`` in rationals but
``0.7400000000000001`` in binary floating point).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from numbers import Real
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import (
    InconsistentProbabilityError,
    InfiniteOddsError,
    InvalidParameterError,
    InvalidPartitionError,
    ZeroEvidenceError,
    ZeroMarginalError,
)

#: Allowed deviation of a partition's prior total from 1.
PARTITION_TOL = 1e-9


def _check_unit(name: str, value) -> None:
    if not isinstance(value, Real) or not (0 <= value <= 1):
        raise InvalidParameterError(f"{name} must be a probability in [0, 1], got {value!r}")


def conditional_probability(joint, marginal):
    """``P(A | B) = P(A and B) / P(B)``."""
    _check_unit("joint", joint)
    _check_unit("marginal", marginal)
    if marginal == 0:
        raise ZeroMarginalError("cannot condition on an event of probability 0")
    if joint > marginal:
        raise InconsistentProbabilityError(
            f"joint probability {joint!r} exceeds marginal {marginal!r}"
        )
    return joint / marginal


# --------------------------------------------------------------------------
# Contingency tables
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContingencyTable:
    """Integer counts indexed by stratum rows and outcome columns.

    ``rows`` holds one label tuple per stratum (e.g. ``("Male", "Other")``);
    ``columns`` holds the outcome labels; ``counts[i][j]`` is the count of
    stratum ``i`` with outcome ``j``.
    """

    label_names: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    columns: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.counts) != len(self.rows):
            raise InvalidParameterError("one count row is required per stratum")
        for row_label, row in zip(self.rows, self.counts):
            if len(row_label) != len(self.label_names):
                raise InvalidParameterError(f"stratum {row_label!r} has the wrong number of labels")
            if len(row) != len(self.columns):
                raise InvalidParameterError(f"stratum {row_label!r} has the wrong number of cells")
            for c in row:
                if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                    raise InvalidParameterError(f"counts must be nonnegative integers, got {c!r}")

    @classmethod
    def from_csv(cls, source, label_columns: int | None = None) -> "ContingencyTable":
        """Read a table from a CSV path, file object or string.

        The header row names every column. The leading ``label_columns``
        columns are stratum labels, the rest are outcome counts. When
        ``label_columns`` is None it is inferred as the leading columns that
        contain at least one non-integer cell.
        """
        if isinstance(source, (str, Path)) and Path(source).exists():
            text = Path(source).read_text(encoding="utf-8")
        elif isinstance(source, str):
            text = source
        else:
            text = source.read()
        records = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        if len(records) < 2:
            raise InvalidParameterError("table needs a header row and at least one data row")
        header = [h.strip() for h in records[0]]
        body = [[c.strip() for c in r] for r in records[1:]]
        if any(len(r) != len(header) for r in body):
            raise InvalidParameterError("every row must have as many cells as the header")

        def _is_int(cell: str) -> bool:
            return cell.lstrip("+").isdigit()

        if label_columns is None:
            label_columns = 0
            while label_columns < len(header) and not all(_is_int(r[label_columns]) for r in body):
                label_columns += 1
        if not 0 <= label_columns < len(header):
            raise InvalidParameterError("table must have at least one count column")
        try:
            counts = tuple(tuple(int(c) for c in r[label_columns:]) for r in body)
        except ValueError as exc:
            raise InvalidParameterError(f"non-integer count: {exc}") from None
        return cls(
            label_names=tuple(header[:label_columns]),
            rows=tuple(tuple(r[:label_columns]) for r in body),
            columns=tuple(header[label_columns:]),
            counts=counts,
        )

    def total(self) -> int:
        return sum(sum(r) for r in self.counts)

    def count(
        self,
        given: Callable[[dict[str, str]], bool] | None = None,
        event: Callable[[str], bool] | None = None,
    ) -> int:
        """Sum of cells whose stratum satisfies ``given`` and column satisfies ``event``.

        ``given`` receives the stratum as a ``{label_name: value}`` dict.
        """
        total = 0
        for labels, row in zip(self.rows, self.counts):
            if given is not None and not given(dict(zip(self.label_names, labels))):
                continue
            total += sum(c for col, c in zip(self.columns, row) if event is None or event(col))
        return total

    def scaled(self, factor: int) -> "ContingencyTable":
        return ContingencyTable(
            self.label_names, self.rows, self.columns,
            tuple(tuple(c * factor for c in r) for r in self.counts),
        )


def table_conditional(
    table: ContingencyTable,
    given: Callable[[dict[str, str]], bool],
    event: Callable[[str], bool],
) -> float:
    """``P(event | given)`` from counts, one division at the very end."""
    numerator = table.count(given, event)
    denominator = table.count(given, None)
    if denominator == 0:
        raise ZeroMarginalError("no observations satisfy the conditioning predicate")
    return numerator / denominator


# --------------------------------------------------------------------------
# Partitions, total probability, Bayes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Branch:
    label: str
    prior: Real
    likelihood: Real  # P(evidence | branch)


@dataclass(frozen=True)
class Partition:
    """Mutually exclusive, exhaustive branches with evidence likelihoods.

    Priors must already sum to 1 (within ``PARTITION_TOL``); they are never
    renormalised silently.
    """

    branches: tuple[Branch, ...]

    def __init__(self, branches: Iterable[Branch | Sequence]):
        items = tuple(b if isinstance(b, Branch) else Branch(*b) for b in branches)
        if not items:
            raise InvalidPartitionError("a partition needs at least one branch")
        labels = [b.label for b in items]
        if len(set(labels)) != len(labels):
            raise InvalidPartitionError(f"duplicate branch labels in {labels}")
        for b in items:
            _check_unit(f"prior of {b.label!r}", b.prior)
            _check_unit(f"likelihood of {b.label!r}", b.likelihood)
        total = sum(b.prior for b in items)
        if abs(total - 1) > PARTITION_TOL:
            raise InvalidPartitionError(f"branch priors sum to {total!r}, not 1")
        object.__setattr__(self, "branches", items)

    def __getitem__(self, label: str) -> Branch:
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [b.label for b in self.branches]


def total_probability(partition: Partition):
    """``sum_i P(E | B_i) P(B_i)``, accumulated in branch order."""
    return sum((b.likelihood * b.prior for b in partition.branches[1:]),
               partition.branches[0].likelihood * partition.branches[0].prior)


def bayes_posterior(partition: Partition, target: str):
    """``P(B_target | E)`` by Bayes' theorem."""
    branch = partition[target]
    evidence = total_probability(partition)
    if evidence == 0:
        raise ZeroEvidenceError("the evidence has probability 0 under every branch")
    return branch.likelihood * branch.prior / evidence


def odds(p):
    """``p / (1 - p)``; a certain event has no finite odds."""
    _check_unit("p", p)
    if p == 1:
        raise InfiniteOddsError("odds are infinite for p = 1")
    return p / (1 - p)


def probability_from_odds(o):
    if not isinstance(o, Real) or o < 0:
        raise InvalidParameterError(f"odds must be >= 0, got {o!r}")
    return o / (1 + o)


def posterior_odds(prior_odds, bayes_factor):
    """Posterior odds = Bayes factor x prior odds."""
    for name, v in (("prior_odds", prior_odds), ("bayes_factor", bayes_factor)):
        if not isinstance(v, Real) or v < 0 or v != v or v == float("inf"):
            raise InvalidParameterError(f"{name} must be a finite nonnegative number, got {v!r}")
    return bayes_factor * prior_odds
