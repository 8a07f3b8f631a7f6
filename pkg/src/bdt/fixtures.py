"""Golden fixtures: every worked number of the reference scenarios, plus property sweeps.

Each fixture computes one value and compares it with an expected value at
a fixed tolerance. Property sweeps report a worst-case deviation (or a
violation count) against an expected 0, so every fixture passes exactly
when ``|computed - expected| <= tolerance``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

import numpy as np

from . import distributions as dist
from .diagnostics import DiagnosticTest, bayes_factor_positive, ppv
from .estimation import binomial_mle_closed, binomial_mle_numeric
from .evidence import Category, classify_2ln_bf, classify_bf
from .grid import (
    Observation,
    ObservationModel,
    PriorGrid,
    nearest_grid_estimate,
    point_bayes_factor,
    posterior,
    posterior_mean,
    posterior_mode,
)
from .network import (
    FIG4_END,
    FIG4_GROUPS,
    FIG4_RATE,
    FIG4_SAMPLES,
    convergence_table,
    converge,
    random_dag,
    topological_order,
)
from .probability import (
    ContingencyTable,
    Partition,
    bayes_posterior,
    odds,
    posterior_odds,
    table_conditional,
    total_probability,
)
from .reporting import convergence_csv

ROUNDED_TOL = 1e-3
HIGH_PRECISION_TOL = 1e-6


@dataclass(frozen=True)
class Fixture:
    id: str
    expected: float
    tolerance: float
    provenance: str
    compute: Callable[[], float]


@dataclass(frozen=True)
class FixtureResult:
    id: str
    expected: float
    computed: float
    tolerance: float
    provenance: str
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


REGISTRY: list[Fixture] = []


def fixture(id: str, expected: float, tolerance: float, provenance: str):
    def register(fn):
        REGISTRY.append(Fixture(id, expected, tolerance, provenance, fn))
        return fn

    return register


def run(only: str | None = None) -> list[FixtureResult]:
    results = []
    for fx in REGISTRY:
        if only and only not in fx.id:
            continue
        computed = float(fx.compute())
        passed = abs(computed - fx.expected) <= fx.tolerance
        results.append(FixtureResult(fx.id, fx.expected, computed, fx.tolerance, fx.provenance, passed))
    return results


# --------------------------------------------------------------------------
# Shared scenarios
# --------------------------------------------------------------------------

HIV_TEST = DiagnosticTest(sensitivity=0.95, specificity=0.98, prevalence=0.001)
TWO_TESTS = ObservationModel([Observation.binomial(10, 6), Observation.binomial(7, 4)])
TWO_TESTS_PRIOR = PriorGrid.from_pairs([(0.35, 0.5), (0.5, 0.5)])
BLOOD = ObservationModel([Observation.negbinomial(1, 7)])
BLOOD_PRIOR = PriorGrid.from_pairs([(0.2, 0.25), (0.1, 0.75)])
BLOOD_UNIFORM_PRIOR = PriorGrid.from_pairs([(0.2, 0.5), (0.1, 0.5)])
VACCINE = ObservationModel([Observation.binomial(10, 7)])
VACCINE_PRIOR = PriorGrid.uniform([k / 10 for k in range(1, 11)])
VACCINE_POSTERIOR = (0.000, 0.001, 0.010, 0.047, 0.129, 0.236, 0.293, 0.221, 0.063, 0.000)


def hospitalization_table() -> ContingencyTable:
    text = resources.files("bdt").joinpath("data/hospitalization.csv").read_text(encoding="utf-8")
    return ContingencyTable.from_csv(text)


# --------------------------------------------------------------------------
# Distributions
# --------------------------------------------------------------------------

fixture("dist.binomial.colon-cancer", 0.1789, 1e-4,
        "20 draws, colon-cancer share 0.3: P(exactly 5)")(lambda: dist.binomial_pmf(20, 0.3, 5))
fixture("dist.poisson.adverse-reactions", 0.0992, 1e-4,
        "2.1 adverse reactions per day: P(exactly 4)")(lambda: dist.poisson_pmf(2.1, 4))
fixture("dist.negbinom.nonresponders", 0.0432, 1e-4,
        "response rate 0.33: P(10 failures before the 3rd response)")(
    lambda: dist.negbinom_pmf(3, 0.33, 10))
fixture("dist.uniform.variance", 2.0, 0.0,
        "5 treatment arms, uniform assignment: variance (25-1)/12")(
    lambda: dist.uniform_moments(5)[1])

# --------------------------------------------------------------------------
# Event algebra
# --------------------------------------------------------------------------

fixture("prob.table.hospitalized-given-male", 0.405, 5e-4,
        "risperidone trial hospitalization counts: P(hospitalized | male)")(
    lambda: table_conditional(hospitalization_table(),
                              lambda r: r["gender"] == "Male",
                              lambda c: c == "hospitalized"))

CANCER_EXACT = Partition([("early", Fraction("0.9"), Fraction("0.8")),
                          ("late", Fraction("0.1"), Fraction("0.2"))])
CANCER = Partition([("early", 0.9, 0.8), ("late", 0.1, 0.2)])

fixture("prob.total.cancer-survival", 0.74, 0.0,
        "stage mix 0.9/0.1, survival 0.8/0.2: P(survive), exact rational arithmetic")(
    lambda: total_probability(CANCER_EXACT))
fixture("prob.bayes.early-stage-given-survival", 0.973, ROUNDED_TOL,
        "same cancer partition: P(early stage | survived)")(
    lambda: bayes_posterior(CANCER, "early"))

# --------------------------------------------------------------------------
# HIV screening
# --------------------------------------------------------------------------

fixture("hiv.ppv", 0.045, ROUNDED_TOL, "sens 0.95, spec 0.98, prevalence 0.001: P(HIV+ | test+)")(
    lambda: ppv(HIV_TEST))
fixture("hiv.bf-positive", 47.5, 1e-9, "same test: P(test+ | HIV+) / P(test+ | HIV-)")(
    lambda: bayes_factor_positive(HIV_TEST))
fixture("hiv.posterior-odds", 0.0475, 5e-4, "prior odds 0.001/0.999 times BF 47.5")(
    lambda: posterior_odds(odds(0.001), 47.5))
fixture("hiv.bars.prior-positive", 0.001, ROUNDED_TOL, "prior/posterior bar chart: prior HIV+")(
    lambda: HIV_TEST.prevalence)
fixture("hiv.bars.prior-negative", 0.999, ROUNDED_TOL, "prior/posterior bar chart: prior HIV-")(
    lambda: 1.0 - HIV_TEST.prevalence)
fixture("hiv.bars.posterior-positive", 0.045, ROUNDED_TOL, "prior/posterior bar chart: posterior HIV+")(
    lambda: ppv(HIV_TEST))
fixture("hiv.bars.posterior-negative", 0.955, ROUNDED_TOL, "prior/posterior bar chart: posterior HIV-")(
    lambda: 1.0 - ppv(HIV_TEST))

# --------------------------------------------------------------------------
# Grid posteriors
# --------------------------------------------------------------------------

fixture("hiv-two-tests.marginal", 0.0330077, HIGH_PRECISION_TOL,
        "tests A (6/10) and B (4/7), sensitivity 0.35 or 0.5 a priori equal: P(data)")(
    lambda: posterior(TWO_TESTS_PRIOR, TWO_TESTS).marginal_likelihood)
fixture("hiv-two-tests.posterior-0.35", 0.151, ROUNDED_TOL, "two HIV tests: P(theta=0.35 | data)")(
    lambda: posterior(TWO_TESTS_PRIOR, TWO_TESTS)[0.35])
fixture("hiv-two-tests.posterior-0.5", 0.849, ROUNDED_TOL, "two HIV tests: P(theta=0.5 | data)")(
    lambda: posterior(TWO_TESTS_PRIOR, TWO_TESTS)[0.5])


def _point_bf():
    return point_bayes_factor(TWO_TESTS, 0.5, 0.35)


fixture("hiv-two-tests.point-bf", 5.64, 0.01, "two HIV tests: L(0.5) / L(0.35)")(_point_bf)
fixture("hiv-two-tests.point-bf-printed", 5.642, 1e-3,
        "two HIV tests: BF from the printed likelihoods 0.056076 / 0.0099389")(_point_bf)
fixture("hiv-two-tests.point-bf-category", float(Category.SUBSTANTIAL), 0.0,
        "two HIV tests: BF 5.64 is substantial evidence")(lambda: classify_bf(_point_bf()).category)

fixture("blood.marginal", 0.046358, 1e-5,
        "donor match rate 0.2 (A) or 0.1 (B), prior 1:3, 7 failures before a match: P(data)")(
    lambda: posterior(BLOOD_PRIOR, BLOOD).marginal_likelihood)
fixture("blood.posterior-0.2", 0.226, ROUNDED_TOL, "blood donation: P(theta=0.2 | data)")(
    lambda: posterior(BLOOD_PRIOR, BLOOD)[0.2])
fixture("blood.posterior-0.1", 0.774, ROUNDED_TOL, "blood donation: P(theta=0.1 | data)")(
    lambda: posterior(BLOOD_PRIOR, BLOOD)[0.1])
fixture("blood-uniform.marginal", 0.0448864, HIGH_PRECISION_TOL, "blood donation, equal prior: P(data)")(
    lambda: posterior(BLOOD_UNIFORM_PRIOR, BLOOD).marginal_likelihood)
fixture("blood-uniform.posterior-0.2", 0.467, ROUNDED_TOL, "blood donation, equal prior: P(theta=0.2 | data)")(
    lambda: posterior(BLOOD_UNIFORM_PRIOR, BLOOD)[0.2])
fixture("blood-uniform.posterior-0.1", 0.533, ROUNDED_TOL, "blood donation, equal prior: P(theta=0.1 | data)")(
    lambda: posterior(BLOOD_UNIFORM_PRIOR, BLOOD)[0.1])

fixture("vaccine.marginal", 0.0909993, HIGH_PRECISION_TOL,
        "vaccine trial, 7 of 10 responders, uniform prior on 0.1..1.0: P(data)")(
    lambda: posterior(VACCINE_PRIOR, VACCINE).marginal_likelihood)
for _k, _expected in enumerate(VACCINE_POSTERIOR):
    _theta = (_k + 1) / 10
    fixture(f"vaccine.posterior-{_theta:.1f}", _expected, ROUNDED_TOL,
            f"vaccine trial posterior table: P(theta={_theta:.1f} | 7 of 10)")(
        lambda _t=_theta: posterior(VACCINE_PRIOR, VACCINE)[_t])
fixture("vaccine.posterior-mean", 0.667, ROUNDED_TOL, "vaccine trial: posterior mean")(
    lambda: posterior_mean(posterior(VACCINE_PRIOR, VACCINE)))
fixture("vaccine.posterior-mode", 0.7, 0.0, "vaccine trial: posterior mode")(
    lambda: posterior_mode(posterior(VACCINE_PRIOR, VACCINE))[0])
fixture("vaccine.nearest-grid-estimate", 0.7, 0.0, "vaccine trial: posterior mean snapped to the grid")(
    lambda: nearest_grid_estimate(posterior(VACCINE_PRIOR, VACCINE)))
fixture("vaccine.mle-closed", 0.7, 0.0, "vaccine trial: MLE m/n")(
    lambda: binomial_mle_closed(7, 10).theta_hat)
fixture("vaccine.mle-numeric", 0.7, 1e-8, "vaccine trial: MLE by golden-section search")(
    lambda: binomial_mle_numeric(7, 10, 1e-8).theta_hat)

# --------------------------------------------------------------------------
# Evidence classification
# --------------------------------------------------------------------------

fixture("evidence.hiv-bf-strong", float(Category.STRONG), 0.0, "BF 47.5 on the raw scale")(
    lambda: classify_bf(47.5).category)
fixture("evidence.two-test-bf-substantial", float(Category.SUBSTANTIAL), 0.0, "BF 5.64 on the raw scale")(
    lambda: classify_bf(5.64).category)
fixture("evidence.hiv-2lnbf", 7.721, 1e-3, "2 ln(47.5)")(lambda: classify_2ln_bf(47.5).two_ln_bf)
fixture("evidence.hiv-2lnbf-strong", float(Category.STRONG), 0.0, "BF 47.5 on the 2 ln scale")(
    lambda: classify_2ln_bf(47.5).category)


@fixture("evidence.reciprocal-symmetry", 0.0, 0.0,
         "1000 log-uniform BFs in [1e-4, 1e4]: count of x, 1/x pairs with differing category or equal direction")
def _reciprocal_symmetry():
    rng = np.random.default_rng(20240501)
    bad = 0
    for x in np.exp(rng.uniform(math.log(1e-4), math.log(1e4), 1000)):
        a, b = classify_bf(float(x)), classify_bf(1.0 / float(x))
        if a.category != b.category or (a.direction == b.direction and a.direction.value != "neutral"):
            bad += 1
    return bad


# --------------------------------------------------------------------------
# Property sweeps
# --------------------------------------------------------------------------

@fixture("properties.pmf-normalization", 0.0, 1e-9,
         "20 random parameter sets per family: max |sum of pmf over (truncated) support - 1|")
def _normalization():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(20):
        fams = [
            dist.DiscreteUniform(int(rng.integers(1, 200))),
            dist.Binomial(int(rng.integers(1, 300)), float(rng.uniform())),
            dist.Poisson(float(rng.uniform(0.01, 80))),
            dist.NegativeBinomial(int(rng.integers(1, 20)), float(rng.uniform(0.05, 1.0))),
        ]
        for d in fams:
            total = math.fsum(d.pmf(m) for m in d.support())
            worst = max(worst, abs(total - 1.0))
    return worst


def _random_binomial_problem(rng, max_grid=16, max_n=12, max_obs=3):
    k = int(rng.integers(1, max_grid + 1))
    thetas = np.sort(rng.choice(np.arange(1, 100), size=k, replace=False)) / 100
    weights = rng.uniform(0.05, 1.0, size=k)
    weights = weights / weights.sum()
    obs = []
    for _ in range(int(rng.integers(1, max_obs + 1))):
        n = int(rng.integers(1, max_n + 1))
        obs.append(Observation.binomial(n, int(rng.integers(0, n + 1))))
    return PriorGrid(tuple(thetas), tuple(weights), normalized=False), ObservationModel(obs)


@fixture("properties.prior-scaling", 0.0, 1e-12,
         "50 random grids: max change in any posterior entry when all prior weights are scaled")
def _prior_scaling():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(50):
        prior, model = _random_binomial_problem(rng)
        c = float(rng.uniform(1e-3, 1e3))
        scaled = PriorGrid(prior.thetas, tuple(w * c for w in prior.weights), normalized=False)
        a, b = posterior(prior, model).posterior, posterior(scaled, model).posterior
        worst = max(worst, max(abs(x - y) for x, y in zip(a, b)))
    return worst


@fixture("properties.sequential-update", 0.0, 1e-12,
         "50 random problems: max |posterior([A, B]) - posterior_B(posterior_A)|")
def _sequential():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(50):
        prior, model_a = _random_binomial_problem(rng)
        _, model_b = _random_binomial_problem(rng)
        joint = posterior(prior, model_a + model_b).posterior
        step = posterior(posterior(prior, model_a).as_prior(), model_b).posterior
        worst = max(worst, max(abs(x - y) for x, y in zip(joint, step)))
    return worst


def brute_force_posterior(prior: PriorGrid, model: ObservationModel) -> list[float]:
    """Posterior by summing the probability of every outcome sequence.

    Each binomial observation ``(n, m)`` contributes, per theta, the total
    probability of all length-``n`` success/failure sequences with exactly
    ``m`` successes, each sequence being a plain product of per-trial
    probabilities.
    """
    thetas = np.asarray(prior.thetas)
    lik = np.ones_like(thetas)
    for obs in model.observations:
        seqs = np.array(list(itertools.product((0, 1), repeat=obs.n)), dtype=bool)
        seqs = seqs[seqs.sum(axis=1) == obs.m]
        per_trial = np.where(seqs[None, :, :], thetas[:, None, None], 1.0 - thetas[:, None, None])
        lik = lik * per_trial.prod(axis=2).sum(axis=1)
    joint = np.asarray(prior.probabilities()) * lik
    return list(joint / joint.sum())


@fixture("properties.brute-force-oracle", 0.0, 1e-10,
         "30 random grids (<=16 points, n<=12): max |grid posterior - sequence enumeration|")
def _brute_force():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(30):
        prior, model = _random_binomial_problem(rng)
        got = posterior(prior, model).posterior
        ref = brute_force_posterior(prior, model)
        worst = max(worst, max(abs(x - y) for x, y in zip(got, ref)))
    return worst


@fixture("properties.uniform-mode-is-grid-mle", 0.0, 0.0,
         "all n<=20, 0<=m<=n, grid 0.00..1.00 step 0.05: count where mode != grid argmax of likelihood")
def _mode_argmax():
    grid = PriorGrid.uniform([k / 20 for k in range(21)])
    bad = 0
    for n in range(1, 21):
        for m in range(n + 1):
            table = posterior(grid, ObservationModel([Observation.binomial(n, m)]))
            direct = [math.comb(n, m) * t ** m * (1 - t) ** (n - m) for t in grid.thetas]
            best = grid.thetas[direct.index(max(direct))]
            bad += posterior_mode(table)[0] != best
    return bad


@fixture("properties.le-cam-bound", 0.0, 0.0,
         "50 random (n, p): count of TV(Bin(n,p), Poisson(np)) > n p^2")
def _le_cam():
    rng = np.random.default_rng(5)
    bad = 0
    for _ in range(50):
        n = int(rng.integers(1, 400))
        p = float(rng.uniform(0.0, 0.3))
        bad += dist.poisson_approx_tv(n, p) > n * p * p
    return bad


# --------------------------------------------------------------------------
# Networks and convergence
# --------------------------------------------------------------------------

@fixture("dag.acyclic-deterministic", 0.0, 0.0,
         "1000 random (n<=200, p, seed): count of DAGs failing acyclicity or regeneration identity")
def _dag_suite():
    rng = np.random.default_rng(6)
    bad = 0
    for _ in range(1000):
        n = int(rng.integers(1, 201))
        p = float(rng.uniform(0.0, 0.1))
        seed = int(rng.integers(0, 2**63))
        dag = random_dag(n, p, seed)
        ok = all(i < j for i, j in dag.edges) and topological_order(dag) == dag.labels
        ok = ok and random_dag(n, p, seed).to_dot() == dag.to_dot()
        bad += not ok
    return bad


DAG_SIGMA = math.sqrt(4950 * 0.01 * 0.99 / 500)


@fixture("dag.mean-edge-count", 49.5, 3 * DAG_SIGMA,
         "500 seeds at n=100, p=0.01: mean edge count (binomial mean 49.5, 3 standard errors)")
def _dag_mean():
    return float(np.mean([len(random_dag(100, 0.01, seed).edges) for seed in range(500)]))


def _fig4():
    return convergence_table(FIG4_GROUPS, FIG4_END, FIG4_RATE)


fixture("converge.start", 0.9, 0.0, "convergence curve at n=0 returns the start value")(
    lambda: converge(0, 0.9, 0.5, 50))
fixture("converge.start-low", 0.1, 0.0, "low-risk curve at n=0 returns the start value")(
    lambda: converge(0, 0.1, 0.5, 50))


@fixture("converge.monotone", 0.0, 0.0,
         "risk-group curves: count of steps where |value - 0.5| fails to shrink or the direction is wrong")
def _monotone():
    bad = 0
    for curve in _fig4():
        gaps = [abs(v - curve.end) for v in curve.values]
        bad += sum(b >= a for a, b in zip(gaps, gaps[1:]))
        sign = 1 if curve.start > curve.end else -1
        bad += sum(sign * (b - a) >= 0 for a, b in zip(curve.values, curve.values[1:]))
    return bad


fixture("converge.csv-rows", 36, 0, "2 groups x 9 sample sizes x 2 results")(
    lambda: len(convergence_csv(_fig4()).splitlines()) - 1)
fixture("converge.high-risk-n50", 0.64715, 1e-5, "high-risk start 0.9, n=50, rate 50: 0.5 + 0.4/e")(
    lambda: next(c for c in _fig4() if c.label == "HighRisk").values[FIG4_SAMPLES.index(50)])
