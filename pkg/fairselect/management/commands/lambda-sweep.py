from fairselect.experiments import run_lambda_sweep
from fairselect.forms import LambdaSweepForm
from fairselect.management.base import ConfigCommand
from fairselect.serializers import sweep_table


class Command(ConfigCommand):
    help = "Evaluates the penalized benchmarks over a range of penalty strengths"
    form_class = LambdaSweepForm
    default_name = "lambda-sweep"

    def run(self, form):
        config = form.build_config()
        rows = []
        for penalty in form.cleaned_data["penalties"]:
            rows.extend(run_lambda_sweep(config, penalty, form.cleaned_data["lambdas"]))
        return [sweep_table(rows).write(self.output_path(form))]
