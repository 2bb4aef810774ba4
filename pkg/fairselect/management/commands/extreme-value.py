from fairselect.experiments import run_extreme_value_study
from fairselect.forms import ExtremeValueForm
from fairselect.management.base import ConfigCommand
from fairselect.serializers import extreme_value_table


class Command(ConfigCommand):
    help = "Measures how often the unconstrained argmax selects a minority candidate as pools grow"
    form_class = ExtremeValueForm
    default_name = "extreme-value"

    def run(self, form):
        data = form.cleaned_data
        points = run_extreme_value_study(
            data["tau0"],
            data["tau1"],
            data["K_schedule"],
            data["macro_reps"],
            data["seed"],
            rho=data["rho"],
            p=data["p"],
            chunk_size=data["chunk_size"],
        )
        return [extreme_value_table(points).write(self.output_path(form))]
