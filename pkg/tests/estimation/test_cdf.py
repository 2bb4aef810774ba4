from fairselect.estimation import EmpiricalCdf, cdf_eval
from fairselect.exceptions import ParameterError

from ..test_case import AppTestCase


class TestEmpiricalCdf(AppTestCase):
    def test_fraction(self):
        self.assertEqual(cdf_eval(EmpiricalCdf([1.0, 2.0, 3.0]), 2.0), 2 / 3)

    def test_bounds(self):
        cdf = EmpiricalCdf([3.0, 1.0, 2.0])

        self.assertEqual(cdf_eval(cdf, 0.5), 0.0)
        self.assertEqual(cdf_eval(cdf, 3.0), 1.0)
        self.assertEqual(cdf_eval(cdf, 10.0), 1.0)

    def test_ties_jump_by_multiplicity(self):
        cdf = EmpiricalCdf([1.0, 1.0, 2.0, 5.0])

        self.assertEqual(cdf(0.999), 0.0)
        self.assertEqual(cdf(1.0), 0.5)

    def test_matches_counting(self):
        rng = self.rng(3)
        samples = rng.standard_normal(1000)
        cdf = EmpiricalCdf(samples)

        for r in rng.standard_normal(50):
            count = sum(1 for value in samples if value <= r)
            self.assertEqual(cdf_eval(cdf, r), count / 1000)

    def test_vectorized(self):
        cdf = EmpiricalCdf([1.0, 2.0])

        self.assertArrayEqual(cdf([0.0, 1.0, 2.0]), [0.0, 0.5, 1.0])

    def test_empty(self):
        with self.assertRaises(ParameterError):
            EmpiricalCdf([])
