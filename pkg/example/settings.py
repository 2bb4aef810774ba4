from os import environ
from os.path import abspath, dirname

SITE_DIR = dirname(abspath(__file__))


# Security

SECRET_KEY = environ.get("SECRET_KEY", "")

DEBUG = True


# Application definition

INSTALLED_APPS = [
    "fairselect",
    "example",
]

USE_I18N = False


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "verbose"},
    },
    "loggers": {
        "fairselect": {
            "handlers": ["console"],
            "level": environ.get("FAIRSELECT_LOG_LEVEL", "INFO"),
        },
    },
}


# fairselect

FAIRSELECT_THREADS = int(environ.get("FAIRSELECT_THREADS", 4))

FAIRSELECT_EXACT_QUANTILE_METHOD = "search"
