import math

import numpy as np
import pytest

from bdt import distributions as dist
from bdt.errors import InvalidParameterError, NonConvergenceError
from bdt.estimation import (
    binomial_mle_closed,
    binomial_mle_numeric,
    golden_section_max,
    grid_map_equals_mle,
)
from bdt.grid import PriorGrid

GRID = [k / 10 for k in range(1, 11)]


class TestClosedForm:
    def test_vaccine(self):
        assert binomial_mle_closed(7, 10).theta_hat == 0.7

    @pytest.mark.parametrize("n", [1, 5, 40])
    def test_boundaries(self, n):
        assert binomial_mle_closed(0, n).theta_hat == 0.0
        assert binomial_mle_closed(n, n).theta_hat == 1.0
        assert binomial_mle_closed(n, n).log_likelihood_at_max == 0.0

    @pytest.mark.parametrize("m, n", [(-1, 5), (6, 5), (0, 0), (1.5, 3)])
    def test_invalid(self, m, n):
        with pytest.raises(InvalidParameterError):
            binomial_mle_closed(m, n)


class TestNumeric:
    @pytest.mark.parametrize("m, n, expected", [(7, 10, 0.7), (5, 10, 0.5), (0, 10, 0.0), (10, 10, 1.0)])
    def test_examples(self, m, n, expected):
        result = binomial_mle_numeric(m, n, 1e-8)
        assert result.theta_hat == pytest.approx(expected, abs=1e-8)
        assert result.method == "numeric"

    def test_agrees_with_closed_form_for_all_small_n(self):
        for n in range(1, 51):
            for m in range(n + 1):
                assert abs(binomial_mle_numeric(m, n, 1e-8).theta_hat - m / n) <= 1e-8, (m, n)

    @pytest.mark.parametrize("m, n", [(0, 7), (3, 7), (7, 7), (13, 50), (1, 2)])
    def test_maximal_on_probe_grid(self, m, n):
        result = binomial_mle_numeric(m, n)
        probes = [dist.binomial_log_pmf(n, t, m) for t in np.linspace(0.0, 1.0, 101)]
        assert result.log_likelihood_at_max >= max(probes) - 1e-12

    def test_local_maximality(self):
        tol = 1e-8
        result = binomial_mle_numeric(3, 11, tol)
        ll = result.log_likelihood_at_max
        assert ll >= dist.binomial_log_pmf(11, result.theta_hat - tol, 3)
        assert ll >= dist.binomial_log_pmf(11, result.theta_hat + tol, 3)

    def test_iteration_count_reported(self):
        result = binomial_mle_numeric(7, 10, 1e-8)
        # bracket shrinks by 0.618 per step: ceil(log(1e-8) / log(0.618)) = 39
        assert result.iterations == math.ceil(math.log(1e-8) / math.log((math.sqrt(5) - 1) / 2))

    def test_bad_tolerance(self):
        with pytest.raises(InvalidParameterError):
            binomial_mle_numeric(1, 2, 0.0)

    def test_iteration_cap(self):
        with pytest.raises(NonConvergenceError):
            golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 1e-30)

    def test_golden_section_generic(self):
        x, _ = golden_section_max(lambda x: -(x - 2.5) ** 2, 0.0, 10.0, 1e-10)
        assert x == pytest.approx(2.5, abs=1e-9)


class TestGridBridge:
    @pytest.mark.parametrize("m, n, expected", [(7, 10, 0.7), (10, 10, 1.0), (6, 10, 0.6)])
    def test_examples(self, m, n, expected):
        assert grid_map_equals_mle(m, n, GRID) == (expected, expected, True)

    def test_derived_case_by_enumeration(self):
        lik = [math.comb(10, 6) * t**6 * (1 - t) ** 4 for t in GRID]
        assert GRID[int(np.argmax(lik))] == 0.6

    def test_accepts_prior_grid(self):
        assert grid_map_equals_mle(7, 10, PriorGrid.uniform(GRID))[2]

    def test_rejects_non_uniform_grid(self):
        with pytest.raises(InvalidParameterError):
            grid_map_equals_mle(7, 10, PriorGrid((0.3, 0.7), (0.2, 0.8)))
