import numpy as np
from django.core.exceptions import ImproperlyConfigured
from django.test import override_settings
from mock import patch

from fairselect.exceptions import ParameterError
from fairselect.quantiles import (
    DifferenceLaw,
    QuantileMode,
    bootstrap_quantile,
    difference_quantile,
    exact_quantile,
    frontier_quantile,
    quantile_rank,
    search_quantile,
)
from fairselect.rng import derive_stream

from ..test_case import AppTestCase


def random_instance(rng):
    n0, n1 = rng.integers(1, 26, size=2)
    K = int(rng.integers(2, 9))
    K0 = int(rng.integers(1, K))
    if rng.random() < 0.5:
        # small integers give many tied differences
        scores0 = rng.integers(-5, 6, size=n0).astype(float)
        scores1 = rng.integers(-5, 6, size=n1).astype(float)
    else:
        scores0 = rng.standard_normal(n0)
        scores1 = rng.standard_normal(n1)
    return scores1, scores0, K0, K - K0


class TestDifferenceQuantile(AppTestCase):
    def test_point_masses(self):
        for method in ("search", "frontier"):
            with self.subTest(method=method):
                self.assertEqual(difference_quantile([3.0], [1.0], 2, 5, method=method), 2.0)

    def test_two_atoms(self):
        # R1 - R0 is 1 or -1 with probability one half each
        for method in ("search", "frontier"):
            with self.subTest(method=method):
                self.assertEqual(difference_quantile([1.0], [0.0, 2.0], 1, 1, method=method), -1.0)

    def test_matches_convolution(self):
        rng = self.rng(7)
        for instance in range(1000):
            scores1, scores0, K0, K1 = random_instance(rng)
            expected = self.convolution_quantile(list(scores1), list(scores0), K0, K1)
            for method in ("search", "frontier"):
                with self.subTest(instance=instance, method=method):
                    self.assertEqual(
                        difference_quantile(scores1, scores0, K0, K1, method=method), expected
                    )

    def test_result_is_a_support_point(self):
        rng = self.rng(8)
        scores1, scores0 = rng.standard_normal(40), rng.standard_normal(30)

        q = difference_quantile(scores1, scores0, 3, 4)

        self.assertIn(q, set(np.subtract.outer(scores1, scores0).ravel()))

    def test_quantile_definition(self):
        rng = self.rng(9)
        scores1, scores0 = rng.standard_normal(60), rng.standard_normal(50)
        law = DifferenceLaw(scores1, scores0, 4, 6)

        q = difference_quantile(scores1, scores0, 4, 6)

        self.assertGreaterEqual(law.cdf(q), 0.4)
        self.assertLess(law.cdf(np.nextafter(q, -np.inf)), 0.4)

    def test_search_on_large_histories(self):
        rng = self.rng(31)
        law = DifferenceLaw(rng.normal(0.2, 0.5, 600), rng.normal(0.0, 1.0, 3400), 8, 2)
        evaluate = DifferenceLaw.counts

        with patch.object(DifferenceLaw, "counts", autospec=True, side_effect=evaluate) as counts:
            q = search_quantile(law)

        self.assertLess(counts.call_count, 80)
        self.assertEqual(q, frontier_quantile(law))

    def test_exact_tie_with_target(self):
        # P(R1 - R0 <= 0) is exactly 1/2 = K0/K
        self.assertEqual(difference_quantile([0.0, 1.0], [0.0], 1, 1), 0.0)
        self.assertEqual(difference_quantile([0.0, 1.0], [0.0], 1, 1, method="frontier"), 0.0)

    @override_settings(FAIRSELECT_EXACT_QUANTILE_METHOD="frontier")
    def test_method_setting(self):
        self.assertEqual(difference_quantile([1.0], [0.0, 2.0], 1, 1), -1.0)

    @override_settings(FAIRSELECT_EXACT_QUANTILE_METHOD="sorting")
    def test_unknown_method(self):
        with self.assertRaisesMessage(ImproperlyConfigured, "sorting"):
            difference_quantile([1.0], [0.0], 1, 1)

    def test_invalid_group_sizes(self):
        for K0, K1 in ((0, 1), (1, 0), (1.5, 1), (True, 2)):
            with self.subTest(K0=K0, K1=K1):
                with self.assertRaises(ParameterError):
                    difference_quantile([1.0], [0.0], K0, K1)

    def test_exact_quantile_of_selector(self):
        selector = self.make_selector([1.0], [0.0, 2.0])

        self.assertEqual(exact_quantile(selector, 1, 1), -1.0)


class TestBootstrapQuantile(AppTestCase):
    def test_close_to_exact_law(self):
        rng = self.rng(10)
        scores1, scores0 = rng.standard_normal(30), rng.standard_normal(30)
        selector = self.make_selector(scores1, scores0)
        law = DifferenceLaw(scores1, scores0, 3, 5)

        q = bootstrap_quantile(selector, 3, 5, 200000, derive_stream(1))

        self.assertGreaterEqual(law.cdf(q), law.target - 0.01)
        self.assertLessEqual(law.cdf(np.nextafter(q, -np.inf)), law.target + 0.01)

    def test_point_masses(self):
        selector = self.make_selector([3.0], [1.0])

        self.assertEqual(bootstrap_quantile(selector, 2, 2, 10, derive_stream(1)), 2.0)

    def test_same_stream_same_result(self):
        rng = self.rng(11)
        selector = self.make_selector(rng.standard_normal(20), rng.standard_normal(20))

        first = bootstrap_quantile(selector, 2, 3, 1000, derive_stream(5, 1, "quantile"))
        second = bootstrap_quantile(selector, 2, 3, 1000, derive_stream(5, 1, "quantile"))

        self.assertEqual(first, second)

    def test_invalid_reps(self):
        selector = self.make_selector([1.0], [0.0])
        for reps in (0, -3, 2.5):
            with self.subTest(reps=reps):
                with self.assertRaises(ParameterError):
                    bootstrap_quantile(selector, 1, 1, reps, derive_stream(1))


class TestQuantileRank(AppTestCase):
    def test_ceiling(self):
        self.assertEqual(quantile_rank(10, 1, 2), 5)
        self.assertEqual(quantile_rank(10, 1, 3), 4)
        self.assertEqual(quantile_rank(1, 1, 100), 1)
        self.assertEqual(quantile_rank(7, 7, 7), 7)


class TestQuantileMode(AppTestCase):
    def test_parse(self):
        self.assertEqual(QuantileMode.parse("exact"), QuantileMode())
        self.assertEqual(QuantileMode.parse(" Bootstrap:500 "), QuantileMode("bootstrap", 500))
        self.assertEqual(str(QuantileMode("bootstrap", 500)), "bootstrap:500")
        self.assertEqual(str(QuantileMode()), "exact")

    def test_parse_invalid(self):
        for text in ("bootstrap", "bootstrap:x", "bootstrap:0", "sample:5", ""):
            with self.subTest(text=text):
                with self.assertRaises(ParameterError):
                    QuantileMode.parse(text)

    def test_needs_stream(self):
        selector = self.make_selector([1.0], [0.0])

        self.assertFalse(QuantileMode().needs_stream)
        self.assertEqual(QuantileMode().estimate(selector, 1, 1), 1.0)
        with self.assertRaises(ParameterError):
            QuantileMode("bootstrap", 10).estimate(selector, 1, 1)
