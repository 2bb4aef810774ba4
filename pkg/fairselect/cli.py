import os
import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line

DEFAULT_LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {"plain": {"format": "%(levelname)s %(name)s: %(message)s"}},
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        }
    },
    "loggers": {"fairselect": {"handlers": ["console"], "level": "INFO"}},
}


def configure():
    """Minimal settings for running the subcommands outside a Django project."""

    if settings.configured or os.environ.get("DJANGO_SETTINGS_MODULE"):
        return
    settings.configure(
        INSTALLED_APPS=["fairselect"],
        LOGGING=DEFAULT_LOGGING,
        USE_I18N=False,
    )


def main(argv=None):
    """
    Entry point of the ``fairselect`` console script, e.g.
    ``fairselect experiment --config run.conf``.
    """

    argv = sys.argv[1:] if argv is None else list(argv)
    configure()
    django.setup()
    execute_from_command_line(["fairselect"] + argv)


if __name__ == "__main__":
    main()
