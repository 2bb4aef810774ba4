import math

from fairselect.exceptions import ParameterError
from fairselect.experiments.studies import (
    counterexample_model,
    estimate_deviation_rate,
    run_extreme_value_study,
    verify_counterexample,
)
from fairselect.models.process import make_synthetic_dgp

from ..test_case import AppTestCase


class TestCounterexample(AppTestCase):
    def test_values(self):
        result = verify_counterexample(200000, seed=1)

        self.assertEqual(result.samples, 200000)
        self.assertAlmostEqual(result.threshold, 0.0, places=6)
        for value, se, expected in (
            (result.pi_u_value, result.pi_u_se, 29 / 48),
            (result.alt_policy_value, result.alt_policy_se, 5 / 8),
            (result.pi_star_value, result.pi_star_se, 241 / 384),
        ):
            with self.subTest(expected=expected):
                self.assertLess(se, 0.001)
                self.assertAlmostEqual(value, expected, delta=5 * se)

    def test_percentile_ranking_is_not_optimal(self):
        result = verify_counterexample(1000000, seed=2)

        ordered = (
            (result.pi_star_value, result.pi_star_se),
            (result.alt_policy_value, result.alt_policy_se),
            (result.pi_u_value, result.pi_u_se),
        )
        for (better, better_se), (worse, worse_se) in zip(ordered, ordered[1:]):
            with self.subTest(better=better, worse=worse):
                self.assertGreater(better - worse, 3 * math.hypot(better_se, worse_se))

    def test_golden_values(self):
        result = verify_counterexample(1000000, seed=5)

        self.assertAlmostEqual(result.pi_u_value, 29 / 48, delta=0.002)
        self.assertAlmostEqual(result.alt_policy_value, 5 / 8, delta=0.002)
        self.assertAlmostEqual(result.pi_star_value, 241 / 384, delta=0.002)

    def test_reproducible(self):
        first = verify_counterexample(10000, seed=3)

        self.assertEqual(first, verify_counterexample(10000, seed=3))

    def test_too_few_samples(self):
        for samples in (9999, 0, 1.5e4 + 0.5):
            with self.subTest(samples=samples):
                with self.assertRaises(ParameterError):
                    verify_counterexample(samples, seed=1)

    def test_model(self):
        law0, law1 = counterexample_model().laws

        self.assertAlmostEqual(law0.mean, 0.5)
        self.assertAlmostEqual(law1.mean, 0.5)
        self.assertAlmostEqual(law0.cdf(3 / 8), 0.0)
        self.assertAlmostEqual(law0.cdf(5 / 8), 1.0)


class TestExtremeValueStudy(AppTestCase):
    def test_single_candidate_matches_minority_share(self):
        (point,) = run_extreme_value_study(1.0, 0.5, (1,), 20000, seed=1)

        self.assertEqual(point.K, 1)
        self.assertAlmostEqual(point.p_minority, 0.15, delta=4 * point.se)

    def test_minority_share_falls_with_pool_size(self):
        points = run_extreme_value_study(1.0, 0.5, (1, 10, 30), 20000, seed=2)

        shares = [point.p_minority for point in points]
        self.assertEqual([point.K for point in points], [1, 10, 30])
        self.assertGreater(shares[0], shares[1])
        self.assertGreater(shares[1], shares[2])
        self.assertLess(shares[1], 0.12)

    def test_equal_scales_stay_at_minority_share(self):
        (point,) = run_extreme_value_study(1.0, 1.0, (20,), 20000, seed=3, rho=0.3)

        self.assertAlmostEqual(point.p_minority, 0.3, delta=4 * point.se)

    def test_chunks(self):
        points = run_extreme_value_study(1.0, 0.5, (5,), 2500, seed=4, chunk_size=1000)

        self.assertEqual(len(points), 1)
        self.assertTrue(0.0 <= points[0].p_minority <= 1.0)

    def test_invalid(self):
        with self.assertRaises(ParameterError):
            run_extreme_value_study(1.0, 0.5, (10, 5), 100, seed=1)
        with self.assertRaises(ParameterError):
            run_extreme_value_study(1.0, 0.5, (5,), 0, seed=1)


class TestDeviationRate(AppTestCase):
    def test_no_deviation_without_mixed_pools(self):
        dgp = make_synthetic_dgp(3, 0.5, 1.0, 0.5, noise_sd=0.0, seed=5)

        study = estimate_deviation_rate(dgp, 5, (20, 40), 50, seed=1, pool_subgroup=1)

        self.assertEqual([point.n for point in study.points], [20, 40])
        for point in study.points:
            self.assertEqual(point.p_deviation, 0.0)
            self.assertEqual(point.replications, 50)
        self.assertIsNone(study.slope)

    def test_threads_do_not_change_results(self):
        dgp = make_synthetic_dgp(3, 0.5, 1.0, 0.5, noise_sd=1.0, seed=6)

        single = estimate_deviation_rate(dgp, 4, (20, 80), 60, seed=2, threads=1)
        threaded = estimate_deviation_rate(dgp, 4, (20, 80), 60, seed=2, threads=4)

        self.assertEqual(single, threaded)

    def test_invalid_schedule(self):
        dgp = make_synthetic_dgp(3, 0.5, 1.0, 0.5, noise_sd=1.0, seed=7)

        with self.assertRaises(ParameterError):
            estimate_deviation_rate(dgp, 4, (80, 20), 10, seed=1)
