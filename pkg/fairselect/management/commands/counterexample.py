from fairselect.experiments import verify_counterexample
from fairselect.forms import CounterexampleForm
from fairselect.management.base import ConfigCommand
from fairselect.serializers import counterexample_table


class Command(ConfigCommand):
    help = "Checks by simulation that percentile ranking is fair but not optimal"
    form_class = CounterexampleForm
    default_name = "counterexample"

    def run(self, form):
        result = verify_counterexample(form.cleaned_data["samples"], form.cleaned_data["seed"])
        return [counterexample_table(result).write(self.output_path(form))]
