from fairselect.experiments import run_selection_experiment
from fairselect.forms import ExperimentForm
from fairselect.management.base import ConfigCommand
from fairselect.serializers import metrics_table


class Command(ConfigCommand):
    help = (
        "Runs a macro-replicated selection experiment and writes performance and "
        "parity per policy"
    )
    form_class = ExperimentForm
    default_name = "experiment"

    def run(self, form):
        rows = run_selection_experiment(form.build_config())
        return [metrics_table(rows).write(self.output_path(form))]
