from fairselect.experiments import estimate_deviation_rate
from fairselect.forms import RatesForm
from fairselect.management.base import ConfigCommand
from fairselect.serializers import deviation_table, slope_table


class Command(ConfigCommand):
    help = "Estimates how fast the empirical fair policy converges to the ideal one"
    form_class = RatesForm
    default_name = "rates"

    def run(self, form):
        data = form.cleaned_data
        study = estimate_deviation_rate(
            form.build_process(),
            data["K"],
            data["n_schedule"],
            data["macro_reps"],
            data["seed"],
            quantile_mode=data["quantile"],
            threads=data["threads"],
            pool_subgroup=data["pool_subgroup"],
        )
        return [
            deviation_table(study).write(self.output_path(form)),
            slope_table(study).write(self.output_path(form, "-slope")),
        ]
