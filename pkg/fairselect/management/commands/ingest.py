import os

from django.core.management.base import BaseCommand, CommandError

from fairselect.exceptions import FairSelectError
from fairselect.ingest import read_population_csv
from fairselect.management.base import CONFIG_ERROR, RUNTIME_ERROR


class Command(BaseCommand):
    help = "Validates a population CSV and prints its size, subgroup counts and outcome gap"

    def add_arguments(self, parser):
        parser.add_argument("csv_path")
        parser.add_argument(
            "--validate-only",
            action="store_true",
            help="Only report whether the file is valid",
        )

    def handle(self, *args, **options):
        path = options["csv_path"]
        if not os.path.isfile(path):
            raise CommandError("No population file at %s" % path, returncode=CONFIG_ERROR)
        try:
            table = read_population_csv(path)
        except FairSelectError as e:
            raise CommandError(str(e), returncode=RUNTIME_ERROR)

        if options["validate_only"]:
            self.stdout.write(self.style.SUCCESS("%s is a valid population" % path))
            return
        for line in table.summary().lines():
            self.stdout.write(line)
