import os

import django


def pytest_configure(config):
    # Mirror manage.py / tox.ini so pytest runs the suite with the test settings.
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tests.settings")
    django.setup()
