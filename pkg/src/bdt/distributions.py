"""Discrete distribution families used throughout the toolkit.

Four families are supported: discrete uniform on ``{1, ..., M}``, binomial,
Poisson and negative binomial (failures before the ``kappa``-th success).
Every mass function is evaluated in the log domain through ``math.lgamma``
and exponentiated at the boundary, so that products of many small masses in
the grid engine neither underflow nor overflow. Outcomes with zero
probability have ``log_pmf == -inf``.

The negative binomial coefficient is ``C(m + kappa - 1, m)``, the standard
failures-before-success form. It is the only form that reproduces the worked
value ``NB(3, 0.33)(10) = 0.0432``.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidParameterError

NEG_INF = float("-inf")

#: Poisson upper-tail mass that summations over the infinite support ignore.
POISSON_TAIL_EPS = 1e-15


def _as_int(name: str, value) -> int:
    if isinstance(value, bool):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}") from None


def _check_probability(name: str, p, *, open_low: bool = False) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be a real number, got {p!r}") from None
    if not math.isfinite(p) or p < 0.0 or p > 1.0 or (open_low and p == 0.0):
        interval = "(0, 1]" if open_low else "[0, 1]"
        raise InvalidParameterError(f"{name} must lie in {interval}, got {p!r}")
    return p


def _log_choose(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _exp(logp: float) -> float:
    return 0.0 if logp == NEG_INF else math.exp(logp)


# --------------------------------------------------------------------------
# Discrete uniform
# --------------------------------------------------------------------------

def _check_m_max(m_max) -> int:
    m_max = _as_int("M", m_max)
    if m_max < 1:
        raise InvalidParameterError(f"M must be >= 1, got {m_max}")
    return m_max


def uniform_pmf(m_max: int, m: int) -> float:
    """P(Z = m) for Z uniform on {1, ..., M}; zero outside the support."""
    m_max = _check_m_max(m_max)
    m = _as_int("m", m)
    return 1.0 / m_max if 1 <= m <= m_max else 0.0


def uniform_log_pmf(m_max: int, m: int) -> float:
    m_max = _check_m_max(m_max)
    m = _as_int("m", m)
    return -math.log(m_max) if 1 <= m <= m_max else NEG_INF


def uniform_moments(m_max: int) -> tuple[float, float]:
    """Mean ``(M+1)/2`` and variance ``(M^2-1)/12``."""
    m_max = _check_m_max(m_max)
    return (m_max + 1) / 2, (m_max * m_max - 1) / 12


# --------------------------------------------------------------------------
# Binomial
# --------------------------------------------------------------------------

def _check_binomial(n, p) -> tuple[int, float]:
    n = _as_int("n", n)
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    return n, _check_probability("p", p)


def binomial_log_pmf(n: int, p: float, m: int) -> float:
    n, p = _check_binomial(n, p)
    m = _as_int("m", m)
    if m < 0 or m > n:
        return NEG_INF
    if p == 0.0:
        return 0.0 if m == 0 else NEG_INF
    if p == 1.0:
        return 0.0 if m == n else NEG_INF
    return _log_choose(n, m) + m * math.log(p) + (n - m) * math.log1p(-p)


def binomial_pmf(n: int, p: float, m: int) -> float:
    """``C(n, m) p^m (1-p)^(n-m)`` for ``0 <= m <= n``, else 0.

    >>> round(binomial_pmf(20, 0.3, 5), 4)
    0.1789
    """
    return _exp(binomial_log_pmf(n, p, m))


def binomial_moments(n: int, p: float) -> tuple[float, float]:
    n, p = _check_binomial(n, p)
    return n * p, n * p * (1.0 - p)


# --------------------------------------------------------------------------
# Poisson
# --------------------------------------------------------------------------

def _check_rate(lam) -> float:
    try:
        lam = float(lam)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"lambda must be a real number, got {lam!r}") from None
    if not math.isfinite(lam) or lam <= 0.0:
        raise InvalidParameterError(f"lambda must be > 0, got {lam!r}")
    return lam


def _check_count(m) -> int:
    m = _as_int("m", m)
    if m < 0:
        raise InvalidParameterError(f"m must be >= 0, got {m}")
    return m


def poisson_log_pmf(lam: float, m: int) -> float:
    lam = _check_rate(lam)
    m = _check_count(m)
    return -lam + m * math.log(lam) - math.lgamma(m + 1)


def poisson_pmf(lam: float, m: int) -> float:
    """``exp(-lam) lam^m / m!`` with ``m!`` taken through log-gamma."""
    return _exp(poisson_log_pmf(lam, m))


def poisson_moments(lam: float) -> tuple[float, float]:
    lam = _check_rate(lam)
    return lam, lam


def poisson_tail_cutoff(lam: float, eps: float = POISSON_TAIL_EPS) -> int:
    """Smallest ``m*`` with ``P(Z > m*) < eps`` certified by a Chernoff bound.

    For ``k > lam`` the bound is ``P(Z >= k) <= exp(-lam) (e lam / k)^k``.
    The returned cutoff is conservative: the true tail beyond it is at most
    the bound, which is below ``eps``.
    """
    lam = _check_rate(lam)
    if not 0.0 < eps < 1.0:
        raise InvalidParameterError(f"eps must lie in (0, 1), got {eps!r}")
    log_eps = math.log(eps)
    log_lam = math.log(lam)
    k = math.floor(lam) + 1
    while -lam + k * (1.0 + log_lam - math.log(k)) >= log_eps:
        k += 1
    return k - 1


# --------------------------------------------------------------------------
# Negative binomial
# --------------------------------------------------------------------------

def _check_negbinom(kappa, p) -> tuple[int, float]:
    kappa = _as_int("kappa", kappa)
    if kappa < 1:
        raise InvalidParameterError(f"kappa must be >= 1, got {kappa}")
    return kappa, _check_probability("p", p, open_low=True)


def negbinom_log_pmf(kappa: int, p: float, m: int) -> float:
    kappa, p = _check_negbinom(kappa, p)
    m = _check_count(m)
    if p == 1.0:
        return 0.0 if m == 0 else NEG_INF
    return (
        math.lgamma(m + kappa) - math.lgamma(kappa) - math.lgamma(m + 1)
        + kappa * math.log(p) + m * math.log1p(-p)
    )


def negbinom_pmf(kappa: int, p: float, m: int) -> float:
    """Probability of exactly ``m`` failures before the ``kappa``-th success.

    ``C(m + kappa - 1, m) p^kappa (1-p)^m``. With ``kappa == 1`` this is the
    geometric mass ``p (1-p)^m``, evaluated directly in that form.
    """
    kappa, p = _check_negbinom(kappa, p)
    m = _check_count(m)
    if kappa == 1:
        return p * (1.0 - p) ** m
    return _exp(negbinom_log_pmf(kappa, p, m))


def negbinom_moments(kappa: int, p: float) -> tuple[float, float]:
    """Mean ``kappa (1-p) / p`` and variance ``kappa (1-p) / p^2``."""
    kappa, p = _check_negbinom(kappa, p)
    q = 1.0 - p
    return kappa * q / p, kappa * q / (p * p)


# --------------------------------------------------------------------------
# Poisson approximation to the binomial
# --------------------------------------------------------------------------

class PoissonApproximation(NamedTuple):
    tv: float
    rate: float
    cutoff: int


def poisson_approximation(n: int, p: float) -> PoissonApproximation:
    """Total-variation distance between Bin(n, p) and Poisson(np).

    The sum runs over ``0 .. max(n, cutoff)`` where ``cutoff`` is
    :func:`poisson_tail_cutoff` of the rate; the ignored Poisson tail is
    below ``1e-15``. At ``p == 0`` both laws sit at zero and the distance
    is defined as 0 (``cutoff`` is then 0 as well).
    """
    n, p = _check_binomial(n, p)
    if p == 0.0:
        return PoissonApproximation(0.0, 0.0, 0)
    lam = n * p
    cutoff = poisson_tail_cutoff(lam)
    upper = max(n, cutoff)
    diffs = (abs(binomial_pmf(n, p, m) - poisson_pmf(lam, m)) for m in range(upper + 1))
    return PoissonApproximation(0.5 * math.fsum(diffs), lam, cutoff)


def poisson_approx_tv(n: int, p: float) -> float:
    return poisson_approximation(n, p).tv


# --------------------------------------------------------------------------
# Value types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteUniform:
    m_max: int

    def __post_init__(self):
        object.__setattr__(self, "m_max", _check_m_max(self.m_max))

    def pmf(self, m: int) -> float:
        return uniform_pmf(self.m_max, m)

    def log_pmf(self, m: int) -> float:
        return uniform_log_pmf(self.m_max, m)

    def mean(self) -> float:
        return uniform_moments(self.m_max)[0]

    def variance(self) -> float:
        return uniform_moments(self.m_max)[1]

    def support(self) -> range:
        return range(1, self.m_max + 1)


@dataclass(frozen=True)
class Binomial:
    n: int
    p: float

    def __post_init__(self):
        n, p = _check_binomial(self.n, self.p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p", p)

    def pmf(self, m: int) -> float:
        return binomial_pmf(self.n, self.p, m)

    def log_pmf(self, m: int) -> float:
        return binomial_log_pmf(self.n, self.p, m)

    def mean(self) -> float:
        return binomial_moments(self.n, self.p)[0]

    def variance(self) -> float:
        return binomial_moments(self.n, self.p)[1]

    def support(self) -> range:
        return range(self.n + 1)


@dataclass(frozen=True)
class Poisson:
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_rate(self.lam))

    def pmf(self, m: int) -> float:
        return poisson_pmf(self.lam, m)

    def log_pmf(self, m: int) -> float:
        return poisson_log_pmf(self.lam, m)

    def mean(self) -> float:
        return self.lam

    def variance(self) -> float:
        return self.lam

    def support(self, eps: float = POISSON_TAIL_EPS) -> range:
        """Truncated support; the omitted upper tail has mass below ``eps``."""
        return range(poisson_tail_cutoff(self.lam, eps) + 1)


@dataclass(frozen=True)
class NegativeBinomial:
    kappa: int
    p: float

    def __post_init__(self):
        kappa, p = _check_negbinom(self.kappa, self.p)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "p", p)

    def pmf(self, m: int) -> float:
        return negbinom_pmf(self.kappa, self.p, m)

    def log_pmf(self, m: int) -> float:
        return negbinom_log_pmf(self.kappa, self.p, m)

    def mean(self) -> float:
        return negbinom_moments(self.kappa, self.p)[0]

    def variance(self) -> float:
        return negbinom_moments(self.kappa, self.p)[1]

    def support(self, eps: float = 1e-15) -> range:
        """Truncated support ``0 .. m*`` with upper-tail mass below ``eps``.

        The tail beyond ``m`` is bounded by a geometric series on the ratio
        of consecutive masses, which decreases once ``m`` passes the mode.
        """
        if self.p == 1.0:
            return range(1)
        q = 1.0 - self.p
        m = 0
        while True:
            ratio = (m + self.kappa) / (m + 1) * q
            if ratio < 1.0:
                bound = self.pmf(m) * ratio / (1.0 - ratio)
                if bound < eps:
                    return range(m + 1)
            m += 1
