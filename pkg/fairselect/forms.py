import math
import os

from django import forms
from django.core.exceptions import NON_FIELD_ERRORS, ValidationError
from django.utils.translation import gettext_lazy as _

from fairselect.experiments.config import ExperimentConfig
from fairselect.exceptions import ParameterError
from fairselect.ingest import read_population_csv
from fairselect.models.process import make_empirical_dgp, make_synthetic_dgp
from fairselect.penalties import Penalty
from fairselect.quantiles import QuantileMode
from fairselect.strategies import get_strategies

DEFAULT_LAMBDAS = "0.0001, 0.001, 0.01, 0.1, 1, 10, 100, 1000, 10000"


class ListField(forms.Field):
    """A comma separated list, each item converted by ``item_type``."""

    item_type = str
    default_error_messages = {"invalid": _("Enter a comma separated list.")}

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if isinstance(value, (list, tuple)):
            items = list(value)
        else:
            items = [item.strip() for item in str(value).split(",") if item.strip()]
        try:
            return [self.item_type(item) for item in items]
        except (TypeError, ValueError):
            raise ValidationError(self.error_messages["invalid"], code="invalid")

    def validate(self, value):
        if self.required and not value:
            raise ValidationError(self.error_messages["required"], code="required")


class IntegerListField(ListField):
    """Positive whole numbers, strictly increasing."""

    item_type = int
    default_error_messages = {
        "invalid": _("Enter whole numbers separated by commas."),
        "positive": _("Every entry must be at least 1."),
        "increasing": _("Entries must be strictly increasing."),
    }

    def validate(self, value):
        super().validate(value)
        if any(item < 1 for item in value):
            raise ValidationError(self.error_messages["positive"], code="positive")
        if any(later <= earlier for earlier, later in zip(value, value[1:])):
            raise ValidationError(self.error_messages["increasing"], code="increasing")


class FloatListField(ListField):
    """Finite nonnegative numbers."""

    item_type = float
    default_error_messages = {
        "invalid": _("Enter numbers separated by commas."),
        "range": _("Every entry must be a finite number of at least 0."),
    }

    def validate(self, value):
        super().validate(value)
        if any(not math.isfinite(item) or item < 0 for item in value):
            raise ValidationError(self.error_messages["range"], code="range")


class ChoiceListField(ListField):
    default_error_messages = {"unknown": _("Unknown choice(s): %(names)s.")}

    def get_choices(self):
        raise NotImplementedError

    def validate(self, value):
        super().validate(value)
        unknown = [item for item in value if item not in self.get_choices()]
        if unknown:
            raise ValidationError(
                self.error_messages["unknown"],
                code="unknown",
                params={"names": ", ".join(unknown)},
            )


class StrategyListField(ChoiceListField):
    default_error_messages = {"unknown": _("Unknown strategy(s): %(names)s.")}

    def get_choices(self):
        return get_strategies()


class PenaltyListField(ChoiceListField):
    default_error_messages = {"unknown": _("Unknown penalty(s): %(names)s.")}

    def get_choices(self):
        return [penalty.value for penalty in Penalty]


class QuantileModeField(forms.Field):
    """``exact`` or ``bootstrap:REPS``."""

    def to_python(self, value):
        if value in self.empty_values:
            return None
        if isinstance(value, QuantileMode):
            return value
        try:
            return QuantileMode.parse(value)
        except ParameterError as e:
            raise ValidationError(str(e), code="invalid")


class BaseConfigForm(forms.Form):
    """
    Validates the run config of one subcommand.

    Keys missing from the data fall back to ``defaults`` (collected over the
    class hierarchy) and keys no field knows about are rejected.
    """

    defaults = {"out": "."}

    name = forms.CharField(required=False)
    seed = forms.IntegerField(min_value=0)
    out = forms.CharField()
    threads = forms.IntegerField(min_value=1, required=False)

    def __init__(self, data=None, **kwargs):
        data = dict(data or {})
        self.unknown_keys = sorted(set(data) - set(self.base_fields))
        merged = self.get_defaults()
        merged.update(data)
        super().__init__(merged, **kwargs)

    @classmethod
    def get_defaults(cls):
        defaults = {}
        for klass in reversed(cls.__mro__):
            defaults.update(getattr(klass, "defaults", {}))
        return defaults

    def clean(self):
        cleaned_data = super().clean()
        if self.unknown_keys:
            raise ValidationError(
                _("Unknown configuration key(s): %(keys)s"),
                code="unknown",
                params={"keys": ", ".join(self.unknown_keys)},
            )
        return cleaned_data

    def error_text(self):
        lines = []
        for field, errors in self.errors.items():
            for error in errors:
                lines.append(error if field == NON_FIELD_ERRORS else "%s: %s" % (field, error))
        return "\n".join(lines)


def _positive(form, key):
    value = form.cleaned_data[key]
    if value is not None and not value > 0:
        raise ValidationError(_("Ensure this value is greater than 0."), code="min_value")
    return value


class ProcessConfigForm(BaseConfigForm):
    """
    The data generating process: the synthetic Gaussian one, or the bootstrap
    of a population CSV when ``population`` is given.
    """

    defaults = {
        "p": 30,
        "rho": 0.15,
        "tau0": 1.0,
        "tau1": 0.5,
        "noise_sd": 1.0,
        "shared_factor": False,
    }

    population = forms.CharField(required=False)
    p = forms.IntegerField(min_value=1)
    rho = forms.FloatField()
    tau0 = forms.FloatField()
    tau1 = forms.FloatField()
    noise_sd = forms.FloatField(min_value=0.0)
    process_seed = forms.IntegerField(min_value=0, required=False)
    shared_factor = forms.BooleanField(required=False)

    def clean_population(self):
        path = self.cleaned_data["population"]
        if path and not os.path.isfile(path):
            raise ValidationError(
                _("No population file at %(path)s."), code="missing", params={"path": path}
            )
        return path

    def clean_rho(self):
        rho = self.cleaned_data["rho"]
        if not 0.0 < rho < 1.0:
            raise ValidationError(_("rho must be strictly between 0 and 1."), code="range")
        return rho

    def clean_tau0(self):
        return _positive(self, "tau0")

    def clean_tau1(self):
        return _positive(self, "tau1")

    def build_process(self):
        data = self.cleaned_data
        if data["population"]:
            return make_empirical_dgp(read_population_csv(data["population"]))
        process_seed = data["process_seed"]
        return make_synthetic_dgp(
            data["p"],
            data["rho"],
            data["tau0"],
            data["tau1"],
            data["noise_sd"],
            seed=data["seed"] if process_seed is None else process_seed,
            shared_factor=data["shared_factor"],
        )


class ExperimentForm(ProcessConfigForm):
    defaults = {
        "policies": "max, fair",
        "quantile": "exact",
        "penalty_lambda": 1.0,
    }

    K = forms.IntegerField(min_value=1)
    schedule = IntegerListField()
    n = forms.IntegerField(min_value=1, required=False)
    macro_reps = forms.IntegerField(min_value=1)
    policies = StrategyListField()
    quantile = QuantileModeField()
    penalty_lambda = forms.FloatField(min_value=0.0)

    def clean(self):
        cleaned_data = super().clean()
        schedule, n = cleaned_data.get("schedule"), cleaned_data.get("n")
        if schedule and n is not None and schedule[-1] > n:
            self.add_error("n", _("n must be at least the largest sample size of the schedule."))
        return cleaned_data

    def build_config(self):
        data = self.cleaned_data
        return ExperimentConfig(
            process=self.build_process(),
            K=data["K"],
            schedule=tuple(data["schedule"]),
            macro_reps=data["macro_reps"],
            policies=tuple(data["policies"]),
            quantile_mode=data["quantile"],
            seed=data["seed"],
            n=data["n"],
            threads=data["threads"],
            penalty_lambda=data["penalty_lambda"],
        )


class LambdaSweepForm(ProcessConfigForm):
    defaults = {
        "K": 10,
        "penalties": "pairwise, group_mean",
        "lambdas": DEFAULT_LAMBDAS,
    }

    K = forms.IntegerField(min_value=1)
    n = forms.IntegerField(min_value=1)
    macro_reps = forms.IntegerField(min_value=1)
    penalties = PenaltyListField()
    lambdas = FloatListField()

    def build_config(self):
        data = self.cleaned_data
        return ExperimentConfig(
            process=self.build_process(),
            K=data["K"],
            schedule=(data["n"],),
            macro_reps=data["macro_reps"],
            policies=tuple(data["penalties"]),
            seed=data["seed"],
            threads=data["threads"],
        )


class RatesForm(ProcessConfigForm):
    defaults = {"K": 10, "quantile": "exact"}

    K = forms.IntegerField(min_value=1)
    n_schedule = IntegerListField()
    macro_reps = forms.IntegerField(min_value=1)
    quantile = QuantileModeField()
    pool_subgroup = forms.TypedChoiceField(
        choices=[("", ""), ("0", "0"), ("1", "1")],
        coerce=int,
        empty_value=None,
        required=False,
    )


class ExtremeValueForm(BaseConfigForm):
    defaults = {"tau0": 1.0, "tau1": 0.5, "rho": 0.15, "p": 30, "chunk_size": 10000}

    tau0 = forms.FloatField()
    tau1 = forms.FloatField()
    rho = forms.FloatField()
    p = forms.IntegerField(min_value=1)
    K_schedule = IntegerListField()
    macro_reps = forms.IntegerField(min_value=1)
    chunk_size = forms.IntegerField(min_value=1)

    clean_rho = ProcessConfigForm.clean_rho
    clean_tau0 = ProcessConfigForm.clean_tau0
    clean_tau1 = ProcessConfigForm.clean_tau1


class CounterexampleForm(BaseConfigForm):
    defaults = {"samples": 1000000}

    samples = forms.IntegerField(min_value=10000)
