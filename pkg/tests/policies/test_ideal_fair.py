import numpy as np

from fairselect.exceptions import ParameterError
from fairselect.ideal import ContinuousScoreLaw, IdealModel
from fairselect.policies import policy_ideal_fair

from ..test_case import AppTestCase


class TestIdealFair(AppTestCase):
    def setUp(self):
        self.model = IdealModel(
            [1.0], ContinuousScoreLaw.gaussian(0.0, 1.0), ContinuousScoreLaw.gaussian(0.0, 1.0)
        )

    def test_minority_gap_above_threshold(self):
        pool = self.make_pool([0.2, 0.9, -1.0], [0, 1, 0])

        decision = policy_ideal_fair(self.model, pool)

        self.assertEqual(decision.selected_index, 1)
        self.assertEqual(decision.selected_subgroup, 1)
        self.assertAlmostEqual(decision.threshold, self.model.quantile(2, 1))

    def test_minority_gap_below_threshold(self):
        pool = self.make_pool([1.0, 0.5], [0, 1])

        decision = policy_ideal_fair(self.model, pool)

        self.assertEqual(decision.selected_index, 0)
        self.assertAlmostEqual(decision.gap, -0.5)

    def test_threshold_can_pick_lower_score(self):
        # a quantile well below zero lets a weaker minority candidate through
        model = IdealModel(
            [1.0], ContinuousScoreLaw.gaussian(2.0, 1.0), ContinuousScoreLaw.gaussian(0.0, 1.0)
        )
        pool = self.make_pool([1.0, 0.5], [0, 1])

        decision = policy_ideal_fair(model, pool)

        self.assertLess(decision.threshold, -0.5)
        self.assertEqual(decision.selected_index, 1)

    def test_single_subgroup_pool_ranks(self):
        pool = self.make_pool([0.1, 0.7, 0.3], [1, 1, 1])

        decision = policy_ideal_fair(self.model, pool)

        self.assertEqual(decision.selected_index, 1)
        self.assertIsNone(decision.threshold)

    def test_ties_within_subgroup(self):
        pool = self.make_pool([0.0, 2.0, 2.0], [0, 1, 1])

        self.assertEqual(policy_ideal_fair(self.model, pool).selected_index, 1)

    def test_selects_minority_at_population_share(self):
        model = IdealModel(
            [1.0], ContinuousScoreLaw.gaussian(0.0, 1.0), ContinuousScoreLaw.gaussian(0.0, 0.5)
        )
        generator = self.rng(14)
        z = np.array([0, 1, 0, 0, 1])
        hits, trials = 0, 4000
        for _ in range(trials):
            scores = np.where(
                z == 1, generator.normal(0.0, 0.5, size=5), generator.normal(0.0, 1.0, size=5)
            )
            hits += policy_ideal_fair(model, self.make_pool(scores, z)).selected_subgroup

        self.assertAlmostEqual(hits / trials, 0.4, delta=0.035)

    def test_method_override(self):
        pool = self.make_pool([0.0, 1.0], [0, 1])

        decision = policy_ideal_fair(self.model, pool, method="grid")

        self.assertEqual(decision.selected_index, 1)
        with self.assertRaises(ParameterError):
            policy_ideal_fair(self.model, pool, method="monte_carlo")
