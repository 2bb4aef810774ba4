from fairselect.exceptions import ConfigError
from fairselect.utils.config import parse_config_lines, read_config_file
from fairselect.utils.general import get_output_stem, get_slug_from_string
from fairselect.utils.version import get_version

from .test_case import AppTestCase


class TestParseConfig(AppTestCase):
    def test_values(self):
        values = parse_config_lines(
            [
                "# experiment",
                "",
                "K = 10",
                "schedule=20, 50  # sizes",
                "  name = Mixed run ",
            ]
        )

        self.assertEqual(values, {"K": "10", "schedule": "20, 50", "name": "Mixed run"})

    def test_empty_value(self):
        self.assertEqual(parse_config_lines(["name ="]), {"name": ""})

    def test_missing_separator(self):
        with self.assertRaisesMessage(ConfigError, "run.conf line 2: expected 'key = value'"):
            parse_config_lines(["K = 1", "schedule"], source="run.conf")

    def test_missing_key(self):
        with self.assertRaisesMessage(ConfigError, "line 1"):
            parse_config_lines(["= 3"])

    def test_duplicate_key(self):
        with self.assertRaisesMessage(ConfigError, "duplicate key 'K'"):
            parse_config_lines(["K = 1", "K = 2"])

    def test_unreadable_file(self):
        with self.assertRaisesMessage(ConfigError, "cannot read config file"):
            read_config_file("/nonexistent/run.conf")


class TestGeneral(AppTestCase):
    def test_slug(self):
        slug = get_slug_from_string("Fair Policy – Ünïcode run")

        self.assertEqual(slug, "fair-policy-unicode-run")

    def test_output_stem(self):
        self.assertEqual(get_output_stem("Shared factor", "experiment"), "shared-factor")
        self.assertEqual(get_output_stem("", "experiment"), "experiment")
        self.assertEqual(get_output_stem("!!!", "rates"), "rates")
        self.assertEqual(get_output_stem(None, "rates"), "rates")


class TestVersion(AppTestCase):
    def test_versions(self):
        self.assertEqual(get_version((1, 0, 0, "final", 0)), "1.0")
        self.assertEqual(get_version((1, 2, 3, "final", 0)), "1.2.3")
        self.assertEqual(get_version((1, 1, 0, "rc", 2)), "1.1rc2")
        self.assertEqual(get_version((2, 0, 1, "dev", 5)), "2.0.1.dev5")
