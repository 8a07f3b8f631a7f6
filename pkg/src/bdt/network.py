"""Random Bayesian-network structures and the prior-strength convergence curve.

DAG generation
--------------
Nodes ``V1 .. VN`` are ordered. Each pair ``(i, j)`` with ``i < j`` is
visited in row-major order (``i`` ascending, then ``j`` ascending) and
becomes an edge ``Vi -> Vj`` when a uniform draw falls below ``edge_prob``.
Because edges only ever point from lower to higher index the graph is
acyclic by construction.

The uniform stream is fixed: 64-bit outputs of the PCG64 generator
(O'Neill 2014, XSL-RR output, 128-bit LCG state) seeded through numpy's
``SeedSequence(seed)``. Each output ``x`` becomes ``(x >> 11) * 2**-53``.
Only the raw bit stream is used, never a distribution method, so the edge
set for a given ``(n, edge_prob, seed)`` does not depend on platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .diagnostics import DiagnosticTest, TestResult
from .errors import CycleDetectedError, InvalidParameterError, ZeroMarginalError

PRESETS = {
    "fig2": {"n": 100, "edge_prob": 0.01},
    "fig3": {"n": 500, "edge_prob": 0.01},
}

_TWO_POW_MINUS_53 = 1.0 / (1 << 53)


def uniform_stream(seed: int, size: int) -> np.ndarray:
    """``size`` doubles in [0, 1) from the documented PCG64 stream."""
    if seed < 0 or seed >= 1 << 64:
        raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    raw = np.random.PCG64(seed).random_raw(size)
    return (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_MINUS_53


@dataclass(frozen=True)
class Dag:
    n: int
    edges: tuple[tuple[int, int], ...]  # 1-based node indices, generation order
    seed: int | None = None
    edge_prob: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"a DAG needs at least one node, got {self.n}")
        seen = set()
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise InvalidParameterError(f"edge ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
            if (i, j) in seen:
                raise InvalidParameterError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @property
    def labels(self) -> list[str]:
        return [f"V{k}" for k in range(1, self.n + 1)]

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        lines += [f"  V{k};" for k in range(1, self.n + 1)]
        lines += [f"  V{i} -> V{j};" for i, j in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edge_csv(self) -> str:
        return "from,to\n" + "".join(f"V{i},V{j}\n" for i, j in self.edges)


def random_dag(n: int, edge_prob: float, seed: int) -> Dag:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameterError(f"node count must be a positive integer, got {n!r}")
    if not (0.0 <= edge_prob <= 1.0):
        raise InvalidParameterError(f"edge_prob must lie in [0, 1], got {edge_prob!r}")
    n = int(n)
    pairs = n * (n - 1) // 2
    if pairs == 0:
        return Dag(n, (), seed, edge_prob)
    u = uniform_stream(seed, pairs)
    hits = np.flatnonzero(u < edge_prob)
    # row-major pair index -> (i, j)
    rows, cols = np.triu_indices(n, k=1)
    edges = tuple((int(rows[h]) + 1, int(cols[h]) + 1) for h in hits)
    return Dag(n, edges, seed, edge_prob)


def preset_dag(name: str, seed: int) -> Dag:
    try:
        params = PRESETS[name]
    except KeyError:
        raise InvalidParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return random_dag(params["n"], params["edge_prob"], seed)


def topological_order(dag: Dag) -> list[str]:
    """Node labels in index order, after checking every edge respects it."""
    for i, j in dag.edges:
        if not i < j:
            raise CycleDetectedError(f"edge V{i} -> V{j} violates the index order")
    return dag.labels


# --------------------------------------------------------------------------
# Two-node status -> result network
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoNodeNet:
    """Joint law of (disease status, test result) for a single test.

    ``joint[(status, result)]`` with both keys in ``{"+", "-"}``.
    """

    joint: dict

    def status_marginal(self, status: str = "+") -> float:
        return self.joint[(status, "+")] + self.joint[(status, "-")]

    def result_marginal(self, result: str = "+") -> float:
        return self.joint[("+", result)] + self.joint[("-", result)]

    def status_given_result(self, status: str, result: str) -> float:
        denom = self.joint[("+", result)] + self.joint[("-", result)]
        if denom == 0.0:
            raise ZeroMarginalError(f"test result {result!r} has probability 0")
        return self.joint[(status, result)] / denom


def two_node_diagnostic_net(test: DiagnosticTest) -> TwoNodeNet:
    prev = test.prevalence
    return TwoNodeNet({
        ("+", "+"): test.sensitivity * prev,
        ("+", "-"): (1.0 - test.sensitivity) * prev,
        ("-", "+"): (1.0 - test.specificity) * (1.0 - prev),
        ("-", "-"): test.specificity * (1.0 - prev),
    })


# --------------------------------------------------------------------------
# Prior-strength convergence
# --------------------------------------------------------------------------

FIG4_SAMPLES = (1, 2, 5, 10, 20, 50, 100, 200, 500)
FIG4_GROUPS = (("LowRisk", 0.1), ("HighRisk", 0.9))
FIG4_END = 0.5
FIG4_RATE = 50.0


def converge(n: float, start: float, end: float, rate: float = FIG4_RATE) -> float:
    """``end + (start - end) * exp(-n / rate)``: exponential drift from start to end.

    Evaluated as the convex combination ``w * start + (1 - w) * end`` with
    ``w = exp(-n / rate)``, which is the same quantity but returns ``start``
    exactly at ``n = 0`` (``0.5 + (0.1 - 0.5)`` is not ``0.1`` in floating point).
    """
    if not (rate > 0.0 and math.isfinite(rate)):
        raise InvalidParameterError(f"rate must be positive, got {rate!r}")
    if not n >= 0:
        raise InvalidParameterError(f"n must be >= 0, got {n!r}")
    for name, v in (("start", start), ("end", end)):
        if not 0.0 <= v <= 1.0:
            raise InvalidParameterError(f"{name} must be a probability, got {v!r}")
    w = math.exp(-n / rate)
    return w * start + (1.0 - w) * end


@dataclass(frozen=True)
class ConvergenceCurve:
    label: str
    samples: tuple[int, ...]
    start: float
    end: float
    rate: float
    values: tuple[float, ...]  # P(positive) per sample size

    @property
    def negatives(self) -> tuple[float, ...]:
        return tuple(1.0 - v for v in self.values)


def convergence_table(groups: Iterable[tuple[str, float]], end: float = FIG4_END,
                      rate: float = FIG4_RATE,
                      samples: Sequence[int] = FIG4_SAMPLES) -> list[ConvergenceCurve]:
    samples = tuple(samples)
    if not samples or any(b <= a for a, b in zip(samples, samples[1:])):
        raise InvalidParameterError("sample sizes must be a nonempty increasing sequence")
    return [
        ConvergenceCurve(label, samples, start, end, rate,
                         tuple(converge(n, start, end, rate) for n in samples))
        for label, start in groups
    ]


def convergence_rows(curves: Sequence[ConvergenceCurve]) -> list[tuple[str, int, str, float]]:
    """Long format ``(group, n, result, probability)``: sample size outer, group, then result."""
    rows = []
    for k, n in enumerate(curves[0].samples):
        for c in curves:
            rows.append((c.label, n, TestResult.POSITIVE.value, c.values[k]))
            rows.append((c.label, n, TestResult.NEGATIVE.value, 1.0 - c.values[k]))
    return rows
