import csv
import math

from fairselect.conf import get_setting


def format_number(value, digits=None):
    """``value`` with ``digits`` significant digits (the ``SIGNIFICANT_DIGITS`` setting)."""

    if value is None:
        return ""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    value = float(value)
    if math.isnan(value):
        return "nan"
    digits = digits or get_setting("SIGNIFICANT_DIGITS")
    return "{:.{}g}".format(value, digits)


class CsvTable:
    """A header plus rows, written with ``\\n`` line endings so output bytes are stable."""

    def __init__(self, headings, rows=()):
        self.headings = list(headings)
        self.rows = [list(row) for row in rows]

    def __len__(self):
        return len(self.rows)

    def write(self, path):
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(self.headings)
            for row in self.rows:
                writer.writerow(
                    [
                        value if isinstance(value, str) else format_number(value)
                        for value in row
                    ]
                )
        return path


def metrics_table(rows):
    return CsvTable(
        [
            "policy",
            "m",
            "mean_performance",
            "se_performance",
            "parity",
            "se_parity",
            "replications",
        ],
        [
            (
                row.policy,
                row.m,
                row.mean_performance,
                row.std_err_performance,
                row.parity,
                row.std_err_parity,
                row.replications,
            )
            for row in rows
        ],
    )


def sweep_table(rows):
    return CsvTable(
        ["penalty", "lambda", "performance", "parity"],
        [(row.penalty, row.lam, row.performance, row.parity) for row in rows],
    )


def deviation_table(study):
    return CsvTable(
        ["n", "p_deviation", "se"],
        [(point.n, point.p_deviation, point.se) for point in study.points],
    )


def slope_table(study):
    return CsvTable(["slope"], [(study.slope,)])


def extreme_value_table(points):
    return CsvTable(
        ["K", "p_minority", "se"],
        [(point.K, point.p_minority, point.se) for point in points],
    )


def counterexample_table(result):
    return CsvTable(
        [
            "pi_u_value",
            "alt_policy_value",
            "pi_star_value",
            "pi_u_se",
            "alt_policy_se",
            "pi_star_se",
            "samples",
        ],
        [
            (
                result.pi_u_value,
                result.alt_policy_value,
                result.pi_star_value,
                result.pi_u_se,
                result.alt_policy_se,
                result.pi_star_se,
                result.samples,
            )
        ],
    )
