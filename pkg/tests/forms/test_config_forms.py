import os

from fairselect.forms import (
    DEFAULT_LAMBDAS,
    CounterexampleForm,
    ExperimentForm,
    LambdaSweepForm,
    ExtremeValueForm,
    RatesForm,
)
from fairselect.models.process import ProcessKind
from fairselect.quantiles import QuantileMode

from ..test_case import AppTestCase

FIXTURE = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures", "population.csv")


class TestExperimentForm(AppTestCase):
    def data(self, **kwargs):
        data = {"seed": "1", "K": "5", "schedule": "20, 50", "macro_reps": "10"}
        data.update(kwargs)
        return data

    def test_defaults(self):
        form = ExperimentForm(self.data())

        self.assertTrue(form.is_valid(), form.errors)
        config = form.build_config()
        self.assertEqual(config.K, 5)
        self.assertEqual(config.schedule, (20, 50))
        self.assertEqual(config.n, 50)
        self.assertEqual(config.policies, ("max", "fair"))
        self.assertEqual(config.quantile_mode, QuantileMode())
        self.assertEqual(config.penalty_lambda, 1.0)
        self.assertEqual(config.process.p, 30)
        self.assertEqual(config.process.rho, 0.15)

    def test_process_seed_defaults_to_seed(self):
        first = ExperimentForm(self.data(p="3"))
        second = ExperimentForm(self.data(p="3", process_seed="1"))

        self.assertTrue(first.is_valid() and second.is_valid())
        self.assertArrayEqual(
            first.build_process().beta, second.build_process().beta
        )

    def test_quantile(self):
        form = ExperimentForm(self.data(quantile="bootstrap:250"))

        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["quantile"], QuantileMode("bootstrap", 250))

    def test_population(self):
        form = ExperimentForm(self.data(population=FIXTURE, schedule="6", n="10"))

        self.assertTrue(form.is_valid(), form.errors)
        process = form.build_process()
        self.assertIs(process.kind, ProcessKind.EMPIRICAL_BOOTSTRAP)
        self.assertEqual(process.rho, 5 / 12)

    def test_missing_key(self):
        data = self.data()
        del data["K"]
        form = ExperimentForm(data)

        self.assertFalse(form.is_valid())
        self.assertIn("K: This field is required.", form.error_text())

    def test_unknown_key(self):
        form = ExperimentForm(self.data(colour="blue", macro_rep="3"))

        self.assertFalse(form.is_valid())
        self.assertIn("Unknown configuration key(s): colour, macro_rep", form.error_text())

    def test_invalid_values(self):
        cases = {
            "schedule": ("50, 20", "Entries must be strictly increasing."),
            "K": ("0", "Ensure this value is greater than or equal to 1."),
            "rho": ("1.5", "rho must be strictly between 0 and 1."),
            "tau1": ("0", "Ensure this value is greater than 0."),
            "policies": ("max, nope", "Unknown strategy(s): nope."),
            "quantile": ("bogus", "quantile mode must be"),
            "population": ("/nonexistent.csv", "No population file at /nonexistent.csv."),
        }
        for key, (value, message) in cases.items():
            with self.subTest(key=key):
                form = ExperimentForm(self.data(**{key: value}))
                self.assertFalse(form.is_valid())
                self.assertIn(message, form.error_text())

    def test_history_shorter_than_schedule(self):
        form = ExperimentForm(self.data(n="30"))

        self.assertFalse(form.is_valid())
        self.assertIn("n: n must be at least", form.error_text())

    def test_shared_factor(self):
        form = ExperimentForm(self.data(p="4", shared_factor="true"))

        self.assertTrue(form.is_valid(), form.errors)
        process = form.build_process()
        self.assertArrayEqual(process.cov_factors[0], process.cov_factors[1])


class TestOtherForms(AppTestCase):
    def test_lambda_sweep(self):
        form = LambdaSweepForm({"seed": "2", "n": "100", "macro_reps": "5"})

        self.assertTrue(form.is_valid(), form.errors)
        expected = [float(value) for value in DEFAULT_LAMBDAS.split(",")]
        self.assertEqual(form.cleaned_data["lambdas"], expected)
        self.assertEqual(form.cleaned_data["penalties"], ["pairwise", "group_mean"])
        config = form.build_config()
        self.assertEqual(config.schedule, (100,))
        self.assertEqual(config.K, 10)

    def test_lambda_sweep_invalid(self):
        for key, value in (("lambdas", "1, -2"), ("lambdas", "1, nan"), ("penalties", "ridge")):
            with self.subTest(key=key, value=value):
                form = LambdaSweepForm({"seed": "2", "n": "100", "macro_reps": "5", key: value})
                self.assertFalse(form.is_valid())

    def test_rates(self):
        form = RatesForm({"seed": "3", "n_schedule": "50, 100", "macro_reps": "8"})

        self.assertTrue(form.is_valid(), form.errors)
        self.assertIsNone(form.cleaned_data["pool_subgroup"])

        form = RatesForm(
            {"seed": "3", "n_schedule": "50, 100", "macro_reps": "8", "pool_subgroup": "1"}
        )
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["pool_subgroup"], 1)

    def test_extreme_value(self):
        form = ExtremeValueForm({"seed": "4", "K_schedule": "1, 10, 100", "macro_reps": "1000"})

        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["K_schedule"], [1, 10, 100])
        self.assertEqual(form.cleaned_data["chunk_size"], 10000)

    def test_extreme_value_rejects_process_keys(self):
        form = ExtremeValueForm(
            {"seed": "4", "K_schedule": "10", "macro_reps": "10", "noise_sd": "1"}
        )

        self.assertFalse(form.is_valid())
        self.assertIn("noise_sd", form.error_text())

    def test_counterexample(self):
        self.assertTrue(CounterexampleForm({"seed": "1"}).is_valid())
        form = CounterexampleForm({"seed": "1", "samples": "500"})
        self.assertFalse(form.is_valid())
        self.assertIn("samples:", form.error_text())

    def test_negative_seed(self):
        form = CounterexampleForm({"seed": "-1"})

        self.assertFalse(form.is_valid())
        self.assertIn("seed:", form.error_text())
