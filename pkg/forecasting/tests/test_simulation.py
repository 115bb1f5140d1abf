import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from scipy import stats

from ..estimation import load_model
from ..exceptions import HorizonError, InvalidProbability, SeriesTooShort
from ..reference_fits import AIRLINE_NON_SEASONAL, AIRLINE_SEASONAL
from ..series import SarimaOrder, TimeSeries
from ..simulation import (
    SimulationEnsemble, SimulationRequest, ensemble_summary, forecast, path_generator, simulate_ensemble,
    simulate_path,
)
from .helpers import arma_sample, frozen_non_seasonal, frozen_seasonal

N_PATHS = 10000


class ForecastTests(SimpleTestCase):

    def test_ar1_decays_towards_zero(self):
        fitted = load_model({'phi': [0.5], 'mean': 0.0}, SarimaOrder(p=1), 1.0, [1.0, 2.0, 4.0, 8.0])
        np.testing.assert_allclose(forecast(fitted, 3), [4.0, 2.0, 1.0])

    def test_random_walk_is_flat(self):
        fitted = load_model({}, SarimaOrder(d=1), 1.0, [3.0, 5.0, 4.0, 7.0])
        np.testing.assert_array_equal(forecast(fitted, 2), [7.0, 7.0])

    def test_white_noise_forecasts_the_mean(self):
        fitted = load_model({'mean': 281.5426}, SarimaOrder(), 1.0, [250.0, 300.0, 290.0])
        np.testing.assert_array_equal(forecast(fitted, 4), [281.5426] * 4)

    def test_airline_seasonal_forecast(self):
        np.testing.assert_allclose(forecast(frozen_seasonal(), 12), AIRLINE_SEASONAL['forecast'], atol=1.0)

    def test_airline_non_seasonal_forecast(self):
        np.testing.assert_allclose(forecast(frozen_non_seasonal(), 12), AIRLINE_NON_SEASONAL['forecast'], atol=1.0)

    def test_zero_innovations_reproduce_forecast(self):
        for fitted in (frozen_seasonal(), frozen_non_seasonal()):
            expected = forecast(fitted, 12)
            np.testing.assert_array_equal(simulate_path(fitted, 12, np.zeros(12)), expected)
            ensemble = simulate_ensemble(fitted, SimulationRequest(horizon=12, zero_innovations=True))
            np.testing.assert_array_equal(ensemble.paths[:, 0], expected)

    def test_horizon_must_be_positive(self):
        with self.assertRaises(HorizonError):
            forecast(frozen_seasonal(), 0)
        with self.assertRaises(HorizonError):
            SimulationRequest(horizon=0)

    def test_not_enough_residuals_to_seed(self):
        fitted = load_model({'theta': [0.1, 0.2, 0.3]}, SarimaOrder(q=3), 1.0, [1.0, 2.0])
        with self.assertRaises(SeriesTooShort):
            simulate_path(fitted, 1, [0.0])

    def test_innovation_count_must_match_horizon(self):
        with self.assertRaises(ValueError):
            simulate_path(frozen_seasonal(), 3, [0.0, 0.0])


class ContinuationTests(SimpleTestCase):
    """Feeding a model its own residuals reproduces the observed continuation"""

    def check_reconstruction(self, order, coefficients, x, k):
        full = load_model(coefficients, order, 1.0, x)
        prefix = load_model(coefficients, order, 1.0, x[:k])
        offset = k - order.lags_needed
        np.testing.assert_allclose(prefix.residuals, full.residuals[:offset], atol=1e-9)

        path = simulate_path(prefix, len(x) - k, full.residuals[offset:])
        self.assertLess(np.max(np.abs(path - x[k:])), 1e-9)

    def test_random_arima_models(self):
        rng = np.random.default_rng(99)
        for _ in range(30):
            p, q, d = (int(v) for v in rng.integers(0, 3, size=3))
            d = min(d, 1)
            phi = list(rng.uniform(-0.4, 0.4, size=p))
            theta = list(rng.uniform(-0.5, 0.5, size=q))
            x = arma_sample(phi, theta, 120, rng)
            coefficients = {'phi': phi, 'theta': theta}
            if d:
                x = np.cumsum(x) + 50.0
            else:
                x = x + 10.0
                coefficients['mean'] = 10.0
            self.check_reconstruction(SarimaOrder(p=p, d=d, q=q), coefficients, x, 60)

    def test_seasonal_model(self):
        rng = np.random.default_rng(5)
        order = SarimaOrder(p=1, d=1, q=1, sp=1, sd=1, sq=1, s=4)
        x = np.cumsum(rng.normal(size=200)) + 100.0
        coefficients = {'phi': [0.3], 'theta': [0.2], 'sphi': [-0.4], 'stheta': [0.3]}
        self.check_reconstruction(order, coefficients, x, 150)


class EnsembleTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.seasonal = frozen_seasonal()
        cls.non_seasonal = frozen_non_seasonal()
        request = SimulationRequest(horizon=12, n_paths=N_PATHS, seed=4321)
        cls.seasonal_ensemble = simulate_ensemble(cls.seasonal, request)
        cls.non_seasonal_ensemble = simulate_ensemble(cls.non_seasonal, request)

    def ensembles(self):
        return ((self.seasonal, self.seasonal_ensemble), (self.non_seasonal, self.non_seasonal_ensemble))

    def test_shape_and_times(self):
        ensemble = self.seasonal_ensemble
        self.assertEqual(ensemble.paths.shape, (12, N_PATHS))
        self.assertEqual(ensemble.start, Fraction(1961))
        self.assertAlmostEqual(ensemble.times()[-1], 1961 + 11 / 12)
        self.assertEqual(ensemble.seed, 4321)

    def test_ensemble_mean_converges_to_forecast(self):
        for fitted, ensemble in self.ensembles():
            bound = 4.0 * ensemble.sd / math.sqrt(N_PATHS)
            self.assertTrue(np.all(np.abs(ensemble.mean - forecast(fitted, 12)) <= bound))

    def test_spread_grows_with_horizon(self):
        for _, ensemble in self.ensembles():
            self.assertTrue(np.all(ensemble.sd[1:] >= 0.99 * ensemble.sd[:-1]))

    def test_one_step_spread_matches_sigma(self):
        for fitted, ensemble in self.ensembles():
            self.assertAlmostEqual(ensemble.sd[0] / math.sqrt(fitted.model.sigma2), 1.0, delta=0.05)

    def test_marginals_are_normal(self):
        for _, ensemble in self.ensembles():
            last = ensemble.paths[-1]
            self.assertLess(abs(stats.skew(last)), 0.15)
            self.assertLess(abs(stats.kurtosis(last)), 0.3)

    def test_paths_are_read_only(self):
        with self.assertRaises(ValueError):
            self.seasonal_ensemble.paths[0, 0] = 0.0

    def test_frames(self):
        ensemble = simulate_ensemble(self.seasonal, SimulationRequest(horizon=3, n_paths=2, seed=1))
        wide = ensemble.to_frame()
        self.assertEqual(list(wide.columns), ['time', 'path_1', 'path_2'])
        self.assertEqual(len(wide), 3)

        long = ensemble.to_long_frame(forecast(self.seasonal, 3))
        self.assertEqual(list(long.columns), ['path', 'time', 'value', 'ensemble_mean', 'forecast'])
        self.assertEqual(len(long), 6)
        np.testing.assert_array_equal(long['value'][:3], ensemble.paths[:, 0])


class SeedTests(SimpleTestCase):

    def setUp(self):
        self.fitted = frozen_seasonal()

    def test_same_seed_same_paths(self):
        request = SimulationRequest(horizon=6, n_paths=50, seed=2024)
        first = simulate_ensemble(self.fitted, request)
        second = simulate_ensemble(self.fitted, request)
        np.testing.assert_array_equal(first.paths, second.paths)

    def test_independent_of_worker_count(self):
        request = SimulationRequest(horizon=6, n_paths=50, seed=2024)
        single = simulate_ensemble(self.fitted, request, workers=1)
        for workers in (2, 4, 7):
            np.testing.assert_array_equal(simulate_ensemble(self.fitted, request, workers=workers).paths, single.paths)

    def test_path_prefix_does_not_depend_on_ensemble_size(self):
        small = simulate_ensemble(self.fitted, SimulationRequest(horizon=6, n_paths=5, seed=8))
        large = simulate_ensemble(self.fitted, SimulationRequest(horizon=6, n_paths=40, seed=8))
        np.testing.assert_array_equal(large.paths[:, :5], small.paths)

    def test_different_seeds_differ(self):
        first = simulate_ensemble(self.fitted, SimulationRequest(horizon=6, n_paths=5, seed=1))
        second = simulate_ensemble(self.fitted, SimulationRequest(horizon=6, n_paths=5, seed=2))
        self.assertFalse(np.array_equal(first.paths, second.paths))

    def test_path_streams_are_distinct(self):
        self.assertNotEqual(path_generator(1, 0).standard_normal(), path_generator(1, 1).standard_normal())

    def test_unseeded_ensemble_records_its_seed(self):
        ensemble = simulate_ensemble(self.fitted, SimulationRequest(horizon=3, n_paths=4))
        self.assertIsNotNone(ensemble.seed)
        again = simulate_ensemble(self.fitted, SimulationRequest(horizon=3, n_paths=4, seed=ensemble.seed))
        np.testing.assert_array_equal(again.paths, ensemble.paths)


class EnsembleSummaryTests(SimpleTestCase):

    def test_constant_paths(self):
        ensemble = SimulationEnsemble(paths=np.full((3, 5), 2.5), start=Fraction(1), frequency=1)
        table = ensemble_summary(ensemble, [0.1, 0.5, 0.9])
        self.assertEqual(list(table.columns), ['time', 'q0.1', 'q0.5', 'q0.9'])
        self.assertTrue((table[['q0.1', 'q0.5', 'q0.9']] == 2.5).all().all())

    def test_median_interpolates(self):
        ensemble = SimulationEnsemble(paths=[[1.0, 3.0]], start=Fraction(1), frequency=1)
        self.assertEqual(ensemble_summary(ensemble, [0.5])['q0.5'][0], 2.0)

    def test_single_path_has_zero_spread(self):
        ensemble = SimulationEnsemble(paths=[[1.0], [2.0]], start=Fraction(1), frequency=1)
        np.testing.assert_array_equal(ensemble.sd, [0.0, 0.0])

    def test_standard_normal_upper_quantile(self):
        noise = TimeSeries(values=arma_sample([], [], 50, np.random.default_rng(0)))
        fitted = load_model({'mean': 0.0}, SarimaOrder(), 1.0, noise)
        ensemble = simulate_ensemble(fitted, SimulationRequest(horizon=1, n_paths=N_PATHS, seed=11))
        self.assertAlmostEqual(ensemble_summary(ensemble, [0.975])['q0.975'][0], 1.96, delta=0.08)
        self.assertAlmostEqual(float(np.var(ensemble.paths[0], ddof=1)), 1.0, delta=0.05)

    def test_probability_out_of_range(self):
        ensemble = SimulationEnsemble(paths=[[1.0, 3.0]], start=Fraction(1), frequency=1)
        for q in (0.0, 1.0, 1.5):
            with self.assertRaises(InvalidProbability):
                ensemble_summary(ensemble, [q])
