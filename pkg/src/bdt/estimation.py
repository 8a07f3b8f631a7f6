"""Binomial maximum likelihood, closed form and numeric."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import distributions as dist
from .errors import InvalidParameterError, NonConvergenceError
from .grid import ObservationModel, Observation, PriorGrid, nearest_grid_point, posterior, posterior_mode

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 0.618...
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class MleResult:
    theta_hat: float
    log_likelihood_at_max: float
    method: str  # "closed-form" | "numeric"
    iterations: int = 0


def _check_counts(m, n) -> tuple[int, int]:
    n = dist._as_int("n", n)
    m = dist._as_int("m", m)
    if n < 1 or not 0 <= m <= n:
        raise InvalidParameterError(f"need 0 <= m <= n and n >= 1, got m={m}, n={n}")
    return m, n


def binomial_mle_closed(m: int, n: int) -> MleResult:
    """``theta_hat = m / n``."""
    m, n = _check_counts(m, n)
    theta = m / n
    return MleResult(theta, dist.binomial_log_pmf(n, theta, m), "closed-form")


def golden_section_max(f, lo: float, hi: float, tol: float,
                       max_iter: int = MAX_ITERATIONS) -> tuple[float, int]:
    """Maximise a unimodal ``f`` on ``[lo, hi]`` until the bracket is narrower than ``tol``.

    Returns the bracket midpoint and the number of iterations. The endpoints
    themselves are never evaluated here.
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a >= tol:
        if it >= max_iter:
            raise NonConvergenceError(
                f"golden-section search did not reach bracket {tol} in {max_iter} iterations"
            )
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        it += 1
    return 0.5 * (a + b), it


def binomial_mle_numeric(m: int, n: int, tolerance: float = 1e-8) -> MleResult:
    """Golden-section search on the binomial log-likelihood over [0, 1].

    The log-likelihood is concave, so the interior search converges to the
    maximiser. Both endpoints are then evaluated exactly; an endpoint wins
    when its log-likelihood is at least the interior one (``m == 0`` puts
    the maximum at 0, ``m == n`` at 1).
    """
    m, n = _check_counts(m, n)
    if not tolerance > 0.0:
        raise InvalidParameterError(f"tolerance must be > 0, got {tolerance!r}")

    def loglik(theta: float) -> float:
        return dist.binomial_log_pmf(n, theta, m)

    theta, iterations = golden_section_max(loglik, 0.0, 1.0, tolerance)
    best_theta, best_ll = theta, loglik(theta)
    for end in (0.0, 1.0):
        ll = loglik(end)
        if ll >= best_ll:
            best_theta, best_ll = end, ll
    return MleResult(best_theta, best_ll, "numeric", iterations)


def grid_map_equals_mle(m: int, n: int, thetas: Sequence[float] | PriorGrid) -> tuple[float, float, bool]:
    """Compare the uniform-prior posterior mode with the grid point nearest ``m/n``.

    Returns ``(map_theta, nearest_grid_mle, equal)``.
    """
    m, n = _check_counts(m, n)
    if isinstance(thetas, PriorGrid):
        if not thetas.is_uniform():
            raise InvalidParameterError("the prior grid must be uniform")
        grid = thetas
    else:
        grid = PriorGrid.uniform(thetas)
    table = posterior(grid, ObservationModel([Observation.binomial(n, m)]))
    map_theta, _ = posterior_mode(table)
    mle_theta = nearest_grid_point(grid.thetas, m / n)
    return map_theta, mle_theta, map_theta == mle_theta
