"""Discrete Bayes over a finite parameter grid.

A :class:`PriorGrid` puts weight on a handful of candidate parameter values,
an :class:`ObservationModel` lists conditionally independent observations
that all depend on the same unknown parameter, and :func:`posterior`
combines the two::

    posterior(theta_i) = w_i L(theta_i) / sum_j w_j L(theta_j)

Likelihoods are kept as logs. The marginal likelihood is accumulated in
ascending-theta order after shifting by the largest log term, so very
small likelihoods (long observation lists) do not underflow to zero.

Example
-------
>>> prior = PriorGrid.uniform([0.35, 0.5])
>>> model = ObservationModel([Observation.binomial(10, 6), Observation.binomial(7, 4)])
>>> table = posterior(prior, model)
>>> [round(p, 3) for p in table.posterior]
[0.151, 0.849]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import distributions as dist
from .errors import (
    AllZeroLikelihoodError,
    InvalidParameterError,
    InvalidThetaError,
    ZeroLikelihoodError,
)

NORMALIZATION_TOL = 1e-9

FAMILIES = ("binomial", "negbinomial", "poisson")


@dataclass(frozen=True)
class PriorGrid:
    """Candidate parameter values with prior weights.

    ``thetas`` must be strictly increasing. Weights must sum to 1 unless
    ``normalized=False``, in which case any nonnegative weights with a
    positive total are accepted and rescaled before use.
    """

    thetas: tuple[float, ...]
    weights: tuple[float, ...]
    normalized: bool = True

    def __post_init__(self):
        thetas = tuple(float(t) for t in self.thetas)
        weights = tuple(float(w) for w in self.weights)
        if not thetas:
            raise InvalidParameterError("prior grid is empty")
        if len(thetas) != len(weights):
            raise InvalidParameterError("thetas and weights differ in length")
        if any(not math.isfinite(t) for t in thetas):
            raise InvalidParameterError("theta values must be finite")
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise InvalidParameterError("theta values must be strictly increasing and distinct")
        if any(not math.isfinite(w) or w < 0.0 for w in weights):
            raise InvalidParameterError("prior weights must be finite and nonnegative")
        total = math.fsum(weights)
        if self.normalized and abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidParameterError(
                f"prior weights sum to {total!r}; pass normalized=False to accept unnormalized weights"
            )
        if total <= 0.0:
            raise InvalidParameterError("prior weights sum to zero")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]] | Mapping[float, float],
                   normalized: bool = True) -> "PriorGrid":
        """Build from ``(theta, weight)`` pairs in any order."""
        items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
        items.sort(key=lambda tw: tw[0])
        return cls(tuple(t for t, _ in items), tuple(w for _, w in items), normalized)

    @classmethod
    def uniform(cls, thetas: Sequence[float]) -> "PriorGrid":
        thetas = sorted(float(t) for t in thetas)
        k = len(thetas)
        if k == 0:
            raise InvalidParameterError("prior grid is empty")
        return cls(tuple(thetas), (1.0 / k,) * k)

    def __len__(self) -> int:
        return len(self.thetas)

    def probabilities(self) -> tuple[float, ...]:
        """Weights rescaled to sum to one."""
        if self.normalized:
            return self.weights
        total = math.fsum(self.weights)
        return tuple(w / total for w in self.weights)

    def is_uniform(self) -> bool:
        return max(self.weights) - min(self.weights) <= 1e-12 * max(self.weights)


@dataclass(frozen=True)
class Observation:
    """One observed count and the family that generated it.

    The unknown grid parameter plays the success-probability role for the
    binomial and negative binomial, and the rate role for the Poisson.
    """

    family: str
    m: int
    n: int | None = None
    kappa: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "m", dist._as_int("m", self.m))
        if self.m < 0:
            raise InvalidParameterError(f"observed count must be >= 0, got {self.m}")
        if self.family == "binomial":
            if self.n is None or self.kappa is not None:
                raise InvalidParameterError("a binomial observation needs n (and no kappa)")
            object.__setattr__(self, "n", dist._as_int("n", self.n))
            if self.n < 1:
                raise InvalidParameterError(f"n must be >= 1, got {self.n}")
            if self.m > self.n:
                raise InvalidParameterError(f"observed {self.m} successes in {self.n} trials")
        elif self.family == "negbinomial":
            if self.kappa is None or self.n is not None:
                raise InvalidParameterError("a negative binomial observation needs kappa (and no n)")
            object.__setattr__(self, "kappa", dist._as_int("kappa", self.kappa))
            if self.kappa < 1:
                raise InvalidParameterError(f"kappa must be >= 1, got {self.kappa}")
        elif self.n is not None or self.kappa is not None:
            raise InvalidParameterError("a Poisson observation takes no n or kappa")

    @classmethod
    def binomial(cls, n: int, m: int) -> "Observation":
        return cls("binomial", m, n=n)

    @classmethod
    def negbinomial(cls, kappa: int, m: int) -> "Observation":
        return cls("negbinomial", m, kappa=kappa)

    @classmethod
    def poisson(cls, m: int) -> "Observation":
        return cls("poisson", m)

    def check_theta(self, theta: float) -> None:
        if self.family == "binomial":
            ok = 0.0 <= theta <= 1.0
        elif self.family == "negbinomial":
            ok = 0.0 < theta <= 1.0
        else:
            ok = theta > 0.0 and math.isfinite(theta)
        if not ok:
            raise InvalidThetaError(f"theta={theta!r} is outside the domain of a {self.family} observation")

    def log_pmf(self, theta: float) -> float:
        self.check_theta(theta)
        if self.family == "binomial":
            return dist.binomial_log_pmf(self.n, theta, self.m)
        if self.family == "negbinomial":
            return dist.negbinom_log_pmf(self.kappa, theta, self.m)
        return dist.poisson_log_pmf(theta, self.m)


@dataclass(frozen=True)
class ObservationModel:
    observations: tuple[Observation, ...] = ()

    def __init__(self, observations: Iterable[Observation] = ()):
        object.__setattr__(self, "observations", tuple(observations))

    def __len__(self) -> int:
        return len(self.observations)

    def __add__(self, other: "ObservationModel") -> "ObservationModel":
        return ObservationModel(self.observations + other.observations)


def log_likelihood(model: ObservationModel, theta: float) -> float:
    """Sum of per-observation log masses; 0 for an empty model."""
    theta = float(theta)
    for obs in model.observations:
        obs.check_theta(theta)
    return math.fsum(obs.log_pmf(theta) for obs in model.observations)


@dataclass(frozen=True)
class PosteriorTable:
    thetas: tuple[float, ...]
    prior: tuple[float, ...]
    log_likelihoods: tuple[float, ...]
    posterior: tuple[float, ...]
    marginal_likelihood: float

    @property
    def likelihoods(self) -> tuple[float, ...]:
        return tuple(0.0 if ll == -math.inf else math.exp(ll) for ll in self.log_likelihoods)

    def rows(self) -> list[tuple[float, float, float, float]]:
        """``(theta, prior, likelihood, posterior)`` per grid point."""
        return list(zip(self.thetas, self.prior, self.likelihoods, self.posterior))

    def as_prior(self) -> PriorGrid:
        """The posterior as a prior grid, for sequential updating."""
        return PriorGrid(self.thetas, self.posterior, normalized=False)

    def __getitem__(self, theta: float) -> float:
        for t, p in zip(self.thetas, self.posterior):
            if t == theta:
                return p
        raise KeyError(theta)


def _weighted_log_terms(prior: PriorGrid, model: ObservationModel) -> tuple[list[float], list[float]]:
    probs = prior.probabilities()
    lls = [log_likelihood(model, t) for t in prior.thetas]
    terms = [ll + math.log(w) if w > 0.0 else -math.inf for ll, w in zip(lls, probs)]
    return lls, terms


def _shifted_sum(terms: list[float]) -> tuple[float, float]:
    """Return ``(shift, s)`` with ``sum(exp(terms)) = exp(shift) * s``."""
    shift = max(terms)
    if shift == -math.inf:
        raise AllZeroLikelihoodError("every grid point gives the data zero probability")
    s = 0.0
    for t in terms:  # ascending theta; order fixed for reproducibility
        s += math.exp(t - shift)
    return shift, s


def marginal_likelihood(prior: PriorGrid, model: ObservationModel) -> float:
    """``sum_i w_i L(theta_i)``, the prior-averaged probability of the data."""
    _, terms = _weighted_log_terms(prior, model)
    shift, s = _shifted_sum(terms)
    return math.exp(shift) * s


def posterior(prior: PriorGrid, model: ObservationModel) -> PosteriorTable:
    lls, terms = _weighted_log_terms(prior, model)
    shift, s = _shifted_sum(terms)
    post = tuple(math.exp(t - shift) / s for t in terms)
    return PosteriorTable(
        thetas=prior.thetas,
        prior=prior.probabilities(),
        log_likelihoods=tuple(lls),
        posterior=post,
        marginal_likelihood=math.exp(shift) * s,
    )


def posterior_mean(table: PosteriorTable) -> float:
    return math.fsum(t * p for t, p in zip(table.thetas, table.posterior))


def posterior_mode(table: PosteriorTable) -> tuple[float, float]:
    """Grid value with the largest posterior mass; exact ties go to the smaller theta."""
    best = 0
    for i, p in enumerate(table.posterior):
        if p > table.posterior[best]:
            best = i
    return table.thetas[best], table.posterior[best]


def nearest_grid_point(thetas: Sequence[float], value: float) -> float:
    """Closest grid value to ``value``; ties go to the smaller theta."""
    best = thetas[0]
    for t in thetas[1:]:
        if abs(t - value) < abs(best - value):
            best = t
    return best


def nearest_grid_estimate(table: PosteriorTable) -> float:
    """Posterior mean snapped onto the grid."""
    return nearest_grid_point(table.thetas, posterior_mean(table))


def point_bayes_factor(model: ObservationModel, theta0: float, theta1: float) -> float:
    """Likelihood ratio ``L(theta0) / L(theta1)`` of two point hypotheses."""
    ll0 = log_likelihood(model, theta0)
    ll1 = log_likelihood(model, theta1)
    if ll1 == -math.inf:
        raise ZeroLikelihoodError(f"the data have zero likelihood at theta={theta1!r}")
    return math.exp(ll0 - ll1)


# --------------------------------------------------------------------------
# Problem-spec documents
# --------------------------------------------------------------------------

def problem_from_dict(doc: Mapping) -> tuple[PriorGrid, ObservationModel]:
    """Parse ``{"prior": [...], "observations": [...], "normalized": bool}``."""
    if not isinstance(doc, Mapping):
        raise InvalidParameterError("problem spec must be a JSON object")
    unknown = set(doc) - {"prior", "observations", "normalized"}
    if unknown:
        raise InvalidParameterError(f"unknown problem-spec keys: {sorted(unknown)}")
    if "prior" not in doc:
        raise InvalidParameterError("problem spec needs a 'prior' list")
    normalized = doc.get("normalized", True)
    if not isinstance(normalized, bool):
        raise InvalidParameterError("'normalized' must be true or false")
    try:
        pairs = [(float(e["theta"]), float(e["weight"])) for e in doc["prior"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameterError(f"bad prior entry: {exc!r}") from None
    thetas = [t for t, _ in pairs]
    if len(set(thetas)) != len(thetas):
        raise InvalidParameterError("duplicate theta values in prior")
    prior = PriorGrid.from_pairs(pairs, normalized=normalized)

    obs = []
    for entry in doc.get("observations", []):
        if not isinstance(entry, Mapping) or "family" not in entry or "m" not in entry:
            raise InvalidParameterError(f"bad observation entry: {entry!r}")
        extra = set(entry) - {"family", "m", "n", "kappa"}
        if extra:
            raise InvalidParameterError(f"unknown observation keys: {sorted(extra)}")
        obs.append(Observation(entry["family"], entry["m"], n=entry.get("n"), kappa=entry.get("kappa")))
    model = ObservationModel(obs)
    for t in prior.thetas:
        for o in model.observations:
            o.check_theta(t)
    return prior, model
