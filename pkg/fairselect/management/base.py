import logging
import os

from django.core.management.base import BaseCommand, CommandError

from fairselect.exceptions import ConfigError, FairSelectError
from fairselect.utils.config import read_config_file
from fairselect.utils.general import get_output_stem

logger = logging.getLogger(__name__)

CONFIG_ERROR = 2
RUNTIME_ERROR = 1


class ConfigCommand(BaseCommand):
    """
    A subcommand driven by a ``key = value`` config file.

    Flags override values from the file, the merged values are validated by
    ``form_class`` and ``run(form)`` returns the paths it wrote. Config problems
    exit with status 2 and errors raised while running with status 1.
    """

    form_class = None
    default_name = None
    override_flags = ("seed", "out", "threads", "quantile")

    def add_arguments(self, parser):
        parser.add_argument("--config", dest="config_path", help="Path to the run config")
        parser.add_argument("--seed", type=int, help="Overrides the seed key")
        parser.add_argument("--out", help="Directory the output files are written to")
        parser.add_argument("--threads", type=int, help="Worker threads")
        if "quantile" in self.form_class.base_fields:
            parser.add_argument("--quantile", help="exact or bootstrap:REPS")

    def get_form(self, options):
        data = {}
        if options.get("config_path"):
            try:
                data.update(read_config_file(options["config_path"]))
            except ConfigError as e:
                raise CommandError(str(e), returncode=CONFIG_ERROR)
        for key in self.override_flags:
            if options.get(key) is not None:
                data[key] = options[key]
        form = self.form_class(data)
        if not form.is_valid():
            raise CommandError(
                "Invalid configuration:\n%s" % form.error_text(), returncode=CONFIG_ERROR
            )
        return form

    def output_path(self, form, suffix=""):
        directory = form.cleaned_data["out"]
        os.makedirs(directory, exist_ok=True)
        stem = get_output_stem(form.cleaned_data["name"], self.default_name)
        return os.path.join(directory, "%s%s.csv" % (stem, suffix))

    def run(self, form):
        raise NotImplementedError("subclasses of ConfigCommand must provide a run() method")

    def handle(self, *args, **options):
        form = self.get_form(options)
        try:
            paths = self.run(form)
        except FairSelectError as e:
            logger.error("%s failed: %s", self.default_name, e)
            raise CommandError(str(e), returncode=RUNTIME_ERROR)
        for path in paths:
            self.stdout.write(self.style.SUCCESS("Wrote %s" % path))
