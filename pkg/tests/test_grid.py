import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdt.errors import AllZeroLikelihoodError, InvalidParameterError, InvalidThetaError, ZeroLikelihoodError
from bdt.fixtures import (
    BLOOD,
    BLOOD_PRIOR,
    BLOOD_UNIFORM_PRIOR,
    TWO_TESTS,
    TWO_TESTS_PRIOR,
    VACCINE,
    VACCINE_POSTERIOR,
    VACCINE_PRIOR,
)
from bdt.grid import (
    Observation,
    ObservationModel,
    PosteriorTable,
    PriorGrid,
    log_likelihood,
    marginal_likelihood,
    nearest_grid_estimate,
    nearest_grid_point,
    point_bayes_factor,
    posterior,
    posterior_mean,
    posterior_mode,
    problem_from_dict,
)


def enumerate_posterior(prior, model):
    """Posterior by summing over every 0/1 outcome sequence of every observation."""
    joint = []
    for theta, w in zip(prior.thetas, prior.probabilities()):
        lik = 1.0
        for obs in model.observations:
            total = 0.0
            for seq in itertools.product((0, 1), repeat=obs.n):
                if sum(seq) == obs.m:
                    total += math.prod(theta if s else 1.0 - theta for s in seq)
            lik *= total
        joint.append(w * lik)
    z = sum(joint)
    return [j / z for j in joint]


@st.composite
def binomial_problems(draw, max_grid=16, max_n=12, max_obs=3):
    k = draw(st.integers(1, max_grid))
    thetas = sorted(draw(st.sets(st.floats(0.01, 0.99), min_size=k, max_size=k)))
    weights = draw(st.lists(st.floats(0.01, 1.0), min_size=k, max_size=k))
    obs = []
    for _ in range(draw(st.integers(1, max_obs))):
        n = draw(st.integers(1, max_n))
        obs.append(Observation.binomial(n, draw(st.integers(0, n))))
    return PriorGrid(thetas, weights, normalized=False), ObservationModel(obs)


class TestLikelihood:
    def test_two_tests_at_half(self):
        assert math.exp(log_likelihood(TWO_TESTS, 0.5)) == pytest.approx(0.056076, abs=1e-6)

    def test_empty_model(self):
        assert log_likelihood(ObservationModel(), 0.3) == 0.0

    def test_single_binomial(self):
        ll = log_likelihood(ObservationModel([Observation.binomial(10, 7)]), 0.7)
        assert ll == pytest.approx(math.log(120 * 0.7**7 * 0.3**3), abs=1e-12)
        assert math.exp(ll) == pytest.approx(0.266828, abs=1e-6)

    @pytest.mark.parametrize("obs, theta", [
        (Observation.binomial(5, 2), 1.2),
        (Observation.negbinomial(1, 3), 0.0),
        (Observation.poisson(3), -1.0),
    ])
    def test_invalid_theta(self, obs, theta):
        with pytest.raises(InvalidThetaError):
            log_likelihood(ObservationModel([obs]), theta)

    @pytest.mark.parametrize("kwargs", [
        dict(family="binomial", m=3),
        dict(family="binomial", m=6, n=5),
        dict(family="negbinomial", m=1),
        dict(family="negbinomial", m=1, kappa=0),
        dict(family="poisson", m=1, n=3),
        dict(family="gamma", m=1),
        dict(family="poisson", m=-1),
    ])
    def test_invalid_observation(self, kwargs):
        with pytest.raises(InvalidParameterError):
            Observation(**kwargs)


class TestReferenceProblems:
    def test_two_tests(self):
        table = posterior(TWO_TESTS_PRIOR, TWO_TESTS)
        assert table.marginal_likelihood == pytest.approx(0.0330077, abs=1e-6)
        assert table[0.35] == pytest.approx(0.151, abs=1e-3)
        assert table[0.5] == pytest.approx(0.849, abs=1e-3)

    def test_two_tests_point_bf(self):
        bf = point_bayes_factor(TWO_TESTS, 0.5, 0.35)
        assert bf == pytest.approx(5.64, abs=0.01)
        assert bf == pytest.approx(0.056076 / 0.0099389, abs=1e-3)

    def test_blood(self):
        table = posterior(BLOOD_PRIOR, BLOOD)
        assert marginal_likelihood(BLOOD_PRIOR, BLOOD) == pytest.approx(0.046358, abs=1e-5)
        assert table[0.2] == pytest.approx(0.226, abs=1e-3)
        assert table[0.1] == pytest.approx(0.774, abs=1e-3)

    def test_blood_uniform_prior(self):
        table = posterior(BLOOD_UNIFORM_PRIOR, BLOOD)
        assert table[0.2] == pytest.approx(0.467, abs=1e-3)
        assert table[0.1] == pytest.approx(0.533, abs=1e-3)

    def test_vaccine(self):
        table = posterior(VACCINE_PRIOR, VACCINE)
        assert table.marginal_likelihood == pytest.approx(0.0909993, abs=1e-6)
        assert table.posterior == pytest.approx(VACCINE_POSTERIOR, abs=1e-3)
        assert posterior_mean(table) == pytest.approx(0.667, abs=1e-3)
        theta, prob = posterior_mode(table)
        assert theta == 0.7
        assert prob == pytest.approx(0.293, abs=1e-3)
        assert nearest_grid_estimate(table) == 0.7

    def test_zero_likelihood_row_kept(self):
        table = posterior(VACCINE_PRIOR, VACCINE)
        assert table.thetas[-1] == 1.0
        assert table.posterior[-1] == 0.0
        assert table.log_likelihoods[-1] == -math.inf


class TestEstimates:
    def test_point_mass(self):
        table = posterior(PriorGrid([0.2, 0.4, 0.6], [0.0, 1.0, 0.0]), VACCINE)
        assert posterior_mean(table) == 0.4
        assert posterior_mode(table) == (0.4, 1.0)
        assert nearest_grid_estimate(table) == 0.4

    def test_symmetric_two_point(self):
        table = PosteriorTable((0.25, 0.75), (0.5, 0.5), (0.0, 0.0), (0.5, 0.5), 1.0)
        assert posterior_mean(table) == 0.5

    def test_mode_tie_goes_low(self):
        # Bin(2, theta) at m=1 has equal likelihood at 0.25 and 0.75
        table = posterior(PriorGrid.uniform([0.25, 0.75]), ObservationModel([Observation.binomial(2, 1)]))
        assert table.posterior[0] == table.posterior[1]
        assert posterior_mode(table)[0] == 0.25

    def test_nearest_midway_goes_low(self):
        assert nearest_grid_point((0.25, 0.75), 0.5) == 0.25
        table = PosteriorTable((0.25, 0.75), (0.5, 0.5), (0.0, 0.0), (0.5, 0.5), 1.0)
        assert nearest_grid_estimate(table) == 0.25

    def test_point_bf_same_theta(self):
        assert point_bayes_factor(TWO_TESTS, 0.4, 0.4) == 1.0

    def test_point_bf_zero_denominator(self):
        with pytest.raises(ZeroLikelihoodError):
            point_bayes_factor(VACCINE, 0.5, 1.0)

    def test_all_zero(self):
        with pytest.raises(AllZeroLikelihoodError):
            posterior(PriorGrid.uniform([1.0]), VACCINE)


class TestPriorGrid:
    def test_must_be_increasing(self):
        with pytest.raises(InvalidParameterError):
            PriorGrid((0.5, 0.3), (0.5, 0.5))
        with pytest.raises(InvalidParameterError):
            PriorGrid((0.3, 0.3), (0.5, 0.5))

    def test_must_sum_to_one(self):
        with pytest.raises(InvalidParameterError):
            PriorGrid((0.3, 0.5), (1.0, 1.0))
        assert PriorGrid((0.3, 0.5), (1.0, 1.0), normalized=False).probabilities() == (0.5, 0.5)

    @pytest.mark.parametrize("weights", [(-0.1, 1.1), (float("nan"), 1.0), (0.0, 0.0)])
    def test_bad_weights(self, weights):
        with pytest.raises(InvalidParameterError):
            PriorGrid((0.3, 0.5), weights, normalized=False)

    def test_from_pairs_sorts(self):
        assert PriorGrid.from_pairs({0.5: 0.5, 0.35: 0.5}).thetas == (0.35, 0.5)

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            PriorGrid((), ())


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(binomial_problems(), st.floats(1e-3, 1e3))
    def test_prior_scaling(self, problem, c):
        prior, model = problem
        scaled = PriorGrid(prior.thetas, [c * w for w in prior.weights], normalized=False)
        assert posterior(scaled, model).posterior == pytest.approx(posterior(prior, model).posterior, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(binomial_problems(max_obs=4))
    def test_sequential_updating(self, problem):
        prior, model = problem
        obs = model.observations
        a, b = ObservationModel(obs[: len(obs) // 2]), ObservationModel(obs[len(obs) // 2:])
        joint = posterior(prior, a + b)
        stepwise = posterior(posterior(prior, a).as_prior(), b)
        assert stepwise.posterior == pytest.approx(joint.posterior, abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(binomial_problems(max_grid=16, max_n=10, max_obs=2))
    def test_brute_force_oracle(self, problem):
        prior, model = problem
        assert posterior(prior, model).posterior == pytest.approx(enumerate_posterior(prior, model), abs=1e-10)

    def test_brute_force_at_grid_limits(self):
        prior = PriorGrid.uniform(np.linspace(0.05, 0.95, 16))
        model = ObservationModel([Observation.binomial(12, 5)])
        assert posterior(prior, model).posterior == pytest.approx(enumerate_posterior(prior, model), abs=1e-10)

    @pytest.mark.parametrize("n", range(1, 21))
    def test_uniform_mode_is_likelihood_argmax(self, n):
        thetas = [round(0.05 * k, 2) for k in range(21)]
        for m in range(n + 1):
            model = ObservationModel([Observation.binomial(n, m)])
            table = posterior(PriorGrid.uniform(thetas), model)
            lls = [log_likelihood(model, t) for t in thetas]
            assert posterior_mode(table)[0] == thetas[int(np.argmax(lls))]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 15).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))),
           st.floats(0.05, 0.45), st.floats(0.55, 0.95), st.floats(0.05, 0.95))
    def test_point_bf_is_odds_ratio(self, nm, t0, t1, w0):
        n, m = nm
        model = ObservationModel([Observation.binomial(n, m)])
        table = posterior(PriorGrid.from_pairs([(t0, w0), (t1, 1.0 - w0)]), model)
        ratio = (table[t0] / table[t1]) / (w0 / (1.0 - w0))
        assert point_bayes_factor(model, t0, t1) == pytest.approx(ratio, rel=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(binomial_problems())
    def test_posterior_sums_to_one(self, problem):
        assert math.fsum(posterior(*problem).posterior) == pytest.approx(1.0, abs=1e-9)

    def test_no_underflow_with_many_observations(self):
        # each likelihood is about 1e-467 here, far below the smallest double
        model = ObservationModel([Observation.binomial(1000, 700)] * 300)
        table = posterior(VACCINE_PRIOR, model)
        assert math.exp(max(table.log_likelihoods)) == 0.0
        assert posterior_mode(table)[0] == 0.7
        assert math.fsum(table.posterior) == pytest.approx(1.0)


class TestProblemSpec:
    def test_roundtrip(self):
        prior, model = problem_from_dict({
            "prior": [{"theta": 0.5, "weight": 0.5}, {"theta": 0.35, "weight": 0.5}],
            "observations": [{"family": "binomial", "n": 10, "m": 6}, {"family": "binomial", "n": 7, "m": 4}],
        })
        assert prior == TWO_TESTS_PRIOR
        assert model == TWO_TESTS

    def test_unnormalized_flag(self):
        prior, _ = problem_from_dict({"prior": [{"theta": 0.1, "weight": 3}], "normalized": False})
        assert prior.probabilities() == (1.0,)

    @pytest.mark.parametrize("doc", [
        [],
        {"observations": []},
        {"prior": [{"theta": 0.1}]},
        {"prior": [{"theta": 0.1, "weight": 0.5}, {"theta": 0.1, "weight": 0.5}]},
        {"prior": [{"theta": 0.1, "weight": 1}], "extra": 1},
        {"prior": [{"theta": 0.1, "weight": 1}], "normalized": "yes"},
        {"prior": [{"theta": 0.1, "weight": 1}], "observations": [{"family": "binomial"}]},
        {"prior": [{"theta": 0.1, "weight": 1}], "observations": [{"family": "binomial", "n": 3, "m": 1, "p": 2}]},
        {"prior": [{"theta": 2.0, "weight": 1}], "observations": [{"family": "binomial", "n": 3, "m": 1}]},
    ])
    def test_rejects(self, doc):
        with pytest.raises(InvalidParameterError):
            problem_from_dict(doc)
