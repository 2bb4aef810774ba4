import numpy as np

from fairselect.exceptions import MissingSubgroupError, ParameterError
from fairselect.models import CandidatePool, HistoryDataset, PopulationTable

from ..test_case import AppTestCase


class TestHistoryDataset(AppTestCase):
    def test_counts(self):
        history = self.make_history([[1.0], [2.0], [3.0]], [1, 0, 0], [1.0, 2.0, 3.0])

        self.assertEqual(history.n, 3)
        self.assertEqual(history.p, 1)
        self.assertEqual(history.n0, 2)
        self.assertEqual(history.n1, 1)
        self.assertEqual(history.n0 + history.n1, history.n)

    def test_arrays_are_read_only(self):
        history = self.make_history([[1.0], [2.0]], [1, 0], [1.0, 2.0])

        with self.assertRaises(ValueError):
            history.y[0] = 5.0

    def test_prefix(self):
        history = self.make_history([[1.0], [2.0], [3.0]], [1, 0, 1], [1.0, 2.0, 3.0])

        prefix = history.prefix(2)

        self.assertArrayEqual(prefix.y, [1.0, 2.0])
        self.assertEqual((prefix.n0, prefix.n1), (1, 1))

    def test_prefix_out_of_range(self):
        history = self.make_history([[1.0]], [1], [1.0])

        with self.assertRaises(ParameterError):
            history.prefix(2)

    def test_subgroup(self):
        history = self.make_history([[1.0], [2.0], [3.0]], [1, 0, 1], [4.0, 5.0, 6.0])

        features, y = history.subgroup(1)

        self.assertArrayEqual(features, [[1.0], [3.0]])
        self.assertArrayEqual(y, [4.0, 6.0])

    def test_inconsistent_dimensions(self):
        with self.assertRaises(ParameterError):
            self.make_history([[1.0], [2.0]], [1, 0], [1.0])
        with self.assertRaises(ParameterError):
            self.make_history([[1.0], [2.0]], [1], [1.0, 2.0])

    def test_bad_groups_and_values(self):
        with self.assertRaisesMessage(ParameterError, "z must only contain 0 and 1"):
            self.make_history([[1.0]], [2], [1.0])
        with self.assertRaises(ParameterError):
            self.make_history([[np.nan]], [1], [1.0])

    def test_empty(self):
        with self.assertRaises(ParameterError):
            HistoryDataset(np.zeros((0, 2)), [], [])


class TestCandidatePool(AppTestCase):
    def test_counts(self):
        pool = self.make_pool([3.0, 1.0, 2.0, 0.0], [0, 1, 1, 0])

        self.assertEqual(pool.K, 4)
        self.assertEqual((pool.K0, pool.K1), (2, 2))
        self.assertTrue(pool.is_mixed)
        self.assertArrayEqual(pool.members(1), [1, 2])
        self.assertIsNone(pool.outcomes)

    def test_single_subgroup(self):
        pool = self.make_pool([3.0], [1])

        self.assertEqual((pool.K0, pool.K1), (0, 1))
        self.assertFalse(pool.is_mixed)

    def test_outcomes_length(self):
        with self.assertRaises(ParameterError):
            CandidatePool(np.ones((2, 1)), [0, 1], outcomes=[1.0])


class TestPopulationTable(AppTestCase):
    def test_summary(self):
        table = PopulationTable([[1.0], [2.0], [3.0]], [0, 1, 1], [1.0, 2.0, 4.0])

        summary = table.summary()

        self.assertEqual((summary.N, summary.p, summary.n0, summary.n1), (3, 1, 1, 2))
        self.assertEqual(summary.mean_y0, 1.0)
        self.assertEqual(summary.mean_y1, 3.0)
        self.assertEqual(summary.disparity, 2.0)
        self.assertIn("disparity = 2.0", summary.lines())

    def test_needs_two_rows(self):
        with self.assertRaises(ParameterError):
            PopulationTable([[1.0]], [0], [1.0])

    def test_needs_both_subgroups(self):
        with self.assertRaisesMessage(MissingSubgroupError, "z=1"):
            PopulationTable([[1.0], [2.0]], [0, 0], [1.0, 2.0])

    def test_as_history(self):
        table = PopulationTable([[1.0], [2.0]], [0, 1], [1.0, 2.0])

        history = table.as_history()

        self.assertEqual((history.n, history.n0, history.n1), (2, 1, 1))
